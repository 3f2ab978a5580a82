import json

import pytest

# Add the project root to Python path so we can import app modules
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))


# ============================================================================
# Shared fixtures
# ============================================================================


@pytest.fixture(scope="session")
def reference():
    """Published tables, generator sets and bounds from configs/reference.yaml."""
    import app.config.common as config
    from app.config.reference import load_reference

    return load_reference(config.reference_path)


@pytest.fixture(scope="session")
def count_table():
    """a(0..45) computed once per session, as a dict."""
    from app.services.enumeration import count_profile

    return dict(enumerate(count_profile(45)))


@pytest.fixture
def disk_cache(tmp_path):
    from app.core.cache import DiskCache

    return DiskCache(tmp_path / "cache")


@pytest.fixture
def write_triple(tmp_path):
    """Write a triple document (dict or GeneratorSet/BrinkhuisTriple) and return its path."""

    def write(doc, name: str = "triple.json"):
        if hasattr(doc, "to_document"):
            doc = doc.to_document()
        path = tmp_path / name
        path.write_text(json.dumps(doc, indent=2))
        return path

    return write


@pytest.fixture
def reference_set(reference):
    """Build a published generator set by name."""
    from app.services.triples import generator_set_from_reference

    def build(name: str):
        return generator_set_from_reference(reference.generator_sets[name])

    return build


@pytest.fixture
def ez_triple(reference):
    from app.services.triples import triple_from_reference

    return triple_from_reference(reference.ez_triple)
