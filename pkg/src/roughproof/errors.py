"""Exception types shared across the package."""


class RoughproofError(Exception):
    pass


class ParseError(RoughproofError):
    def __init__(self, line, col, message, origin="<string>"):
        super().__init__(f"{origin}:{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message
        self.origin = origin


class IllSorted(RoughproofError):
    def __init__(self, path, message=""):
        super().__init__(f"ill-sorted term at {list(path)}: {message}")
        self.path = tuple(path)
        self.message = message


class PolarityError(RoughproofError):
    """A hat connective in succedent position or a check one in precedent."""

    def __init__(self, path, message=""):
        super().__init__(f"structure out of position at {list(path)}: {message}")
        self.path = tuple(path)


class UnknownRule(RoughproofError):
    def __init__(self, name):
        super().__init__(f"unknown rule: {name}")
        self.name = name


class AritySmash(RoughproofError):
    def __init__(self, rule, expected, got):
        super().__init__(f"rule {rule} expects {expected} premises, got {got}")
        self.rule = rule
        self.expected = expected
        self.got = got


class UnknownCalculus(RoughproofError):
    pass


class InvalidProof(RoughproofError):
    """Raised by the proof checker; ``path`` addresses the offending node."""

    def __init__(self, path, reason):
        super().__init__(f"invalid proof at node {list(path)}: {reason}")
        self.path = tuple(path)
        self.reason = reason


class NotDisplayable(RoughproofError):
    def __init__(self, pos):
        super().__init__(f"occurrence at {list(pos)} cannot be displayed")
        self.pos = tuple(pos)


class UnsupportedConnective(RoughproofError):
    pass


class NotPrincipal(RoughproofError):
    pass


class StuckCut(RoughproofError):
    def __init__(self, path, reason=""):
        super().__init__(f"no reduction applies to the cut at {list(path)}: {reason}")
        self.path = tuple(path)


class NotTqBa(RoughproofError):
    def __init__(self, witness):
        super().__init__(f"not a tqBa: {witness}")
        self.witness = witness


class CapExceeded(RoughproofError):
    pass


class UnassignedAtom(RoughproofError):
    def __init__(self, name):
        super().__init__(f"no value assigned to {name}")
        self.name = name
