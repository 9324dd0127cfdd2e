"""Exception hierarchy shared by every ordolex module."""


class OrdolexError(Exception):
    """Base class for data errors (CLI exit code 2)."""


class ParseError(OrdolexError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class EmptyCorpus(ParseError):
    pass


class SchemaError(OrdolexError):
    pass


class RowError(OrdolexError):
    def __init__(self, message, row):
        self.row = row
        super().__init__(f"row {row}: {message}")


class NoEligibleSentences(OrdolexError):
    pass


class MissingClass(OrdolexError):
    pass


class MissingStats(OrdolexError):
    def __init__(self, codes, what="stats"):
        self.codes = sorted(codes)
        super().__init__(f"missing {what} for: {', '.join(self.codes)}")


class MissingCoordinates(MissingStats):
    def __init__(self, codes):
        super().__init__(codes, what="coordinates")


class DegenerateClass(OrdolexError):
    pass


class NonFiniteFeature(OrdolexError):
    pass


class DimensionMismatch(OrdolexError):
    pass


class DegenerateSample(OrdolexError):
    pass


class DegenerateDesign(OrdolexError):
    pass


class RankDeficient(OrdolexError):
    def __init__(self, columns, rank):
        self.columns = list(columns)
        self.rank = rank
        super().__init__(
            f"design is rank deficient (rank {rank}); dependent columns: "
            + ", ".join(self.columns)
        )


class Underdetermined(OrdolexError):
    pass


class NotNested(OrdolexError):
    pass


class ConfigError(OrdolexError):
    pass
