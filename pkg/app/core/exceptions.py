class ParseException(Exception):
    pass


class DataException(Exception):
    pass


class MalformedTripleException(DataException):
    pass


class SelectorOutOfRangeException(DataException):
    pass


class FamilyLengthException(DataException):
    pass


class MissingCountException(DataException):
    pass


class BoundDomainException(DataException):
    pass


class ResourceLimitException(Exception):
    pass


class CountOverflowException(ResourceLimitException):
    pass
