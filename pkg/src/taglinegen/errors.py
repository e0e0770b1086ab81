"""Exception types raised across the tagline pipeline."""


class TaglineError(Exception):
    """Base class for all data errors raised by taglinegen."""


class InvalidProfile(TaglineError, ValueError):
    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"invalid profile field: {field}")


class ParseError(TaglineError, ValueError):
    def __init__(self, line, message="malformed record"):
        self.line = line
        super().__init__(f"line {line}: {message}")


class DuplicateUser(TaglineError, ValueError):
    def __init__(self, user_id, line=None):
        self.user_id = user_id
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}duplicate user_id {user_id!r}")


class EmptyInput(TaglineError, ValueError):
    pass


class EmptyLexicon(TaglineError, ValueError):
    pass


class MalformedUrl(TaglineError, ValueError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"malformed url: {url!r}")


class DomainError(TaglineError, ValueError):
    pass


class EmptyCorpus(TaglineError, ValueError):
    pass


class UnknownTerm(TaglineError, KeyError):
    def __init__(self, term):
        self.term = term
        super().__init__(term)

    def __str__(self):
        return f"term not in corpus statistics: {self.term!r}"


class NoCandidates(TaglineError, ValueError):
    pass


class UnequalRaterCounts(TaglineError, ValueError):
    pass
