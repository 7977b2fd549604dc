"""Exception hierarchy shared by all codo_kg modules."""


class CodoError(Exception):
    """Base class for every error raised by this package."""


class UnresolvedPrefixError(CodoError, KeyError):
    def __init__(self, prefix: str):
        self.prefix = prefix
        super().__init__(f"unresolved prefix {prefix!r}")

    def __str__(self):
        return self.args[0]


class InvalidLiteralError(CodoError, ValueError):
    """A lexical form does not belong to the lexical space of its datatype."""


class MalformedTripleError(CodoError, ValueError):
    pass


class RDFSyntaxError(CodoError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedConstructError(RDFSyntaxError):
    def __init__(self, construct: str, line: int | None = None):
        self.construct = construct
        super().__init__(f"unsupported construct: {construct}", line)


class SchemaCycleError(CodoError):
    def __init__(self, relation: str, cycle):
        self.relation = relation
        self.cycle = list(cycle)
        names = " -> ".join(str(t) for t in self.cycle)
        super().__init__(f"cyclic {relation}: {names}")


class UnknownLabelError(CodoError, LookupError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown label {label!r}")


class AmbiguousLabelError(CodoError, LookupError):
    def __init__(self, label: str, candidates):
        self.label = label
        self.candidates = sorted(candidates)
        names = ", ".join(str(c) for c in self.candidates)
        super().__init__(f"ambiguous label {label!r}: {names}")


class DivergenceError(CodoError, RuntimeError):
    pass


class NotEntailedError(CodoError):
    pass


class MappingSyntaxError(CodoError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        line = text.count("\n", 0, position) + 1
        column = position - (text.rfind("\n", 0, position) + 1) + 1
        self.line, self.column = line, column
        super().__init__(f"{message} at line {line}, column {column}")


class UnsupportedCoercionError(CodoError):
    def __init__(self, datatype: str):
        self.datatype = datatype
        super().__init__(f"unsupported coercion datatype {datatype!r}")


class QuerySyntaxError(CodoError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        suffix = f" (at offset {position})" if position is not None else ""
        super().__init__(message + suffix)


class UnsupportedFeatureError(QuerySyntaxError):
    def __init__(self, feature: str, position: int | None = None):
        self.feature = feature
        super().__init__(f"unsupported feature: {feature}", position)
