"""Exception hierarchy shared by every stage of the toolkit."""


class FccError(Exception):
    """Base class; ``error_class`` is the tag printed by the CLI."""

    error_class = 'FccError'


class SourceSyntaxError(FccError):
    error_class = 'SyntaxError'

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class TypeMismatch(FccError):
    error_class = 'TypeMismatch'

    def __init__(self, expected, found, location: str = ''):
        where = f" in {location}" if location else ''
        super().__init__(f"expected {expected}, found {found}{where}")
        self.expected = expected
        self.found = found
        self.location = location


class UnboundVariable(FccError):
    error_class = 'UnboundVariable'

    def __init__(self, name):
        super().__init__(f"unbound variable {name}")
        self.name = name


class RigidEscape(FccError):
    error_class = 'RigidEscape'

    def __init__(self, rigid_id: int):
        super().__init__(f"opaque environment type (rigid {rigid_id}) escapes its open")
        self.rigid_id = rigid_id


class ClosureNotClosed(FccError):
    error_class = 'ClosureNotClosed'

    def __init__(self, free):
        names = ', '.join(str(n) for n in free)
        super().__init__(f"closure code must be closed, but mentions {names}")
        self.free = list(free)


class UnmappedVariable(FccError):
    error_class = 'UnmappedVariable'

    def __init__(self, name):
        super().__init__(f"variable {name} has no mapping")
        self.name = name


class ScopeViolation(FccError):
    error_class = 'ScopeViolation'
    reason = 'free variables outside the conversion scope'

    def __init__(self, names):
        listed = ', '.join(str(n) for n in names)
        super().__init__(f"{self.reason}: {listed}")
        self.names = list(names)


class UntypedScope(ScopeViolation):
    """A scope variable used by the term has no type in the typing context."""

    reason = 'scope variables without a type in the context'


class ShadowedVariable(FccError):
    error_class = 'ShadowedVariable'

    def __init__(self, name):
        super().__init__(f"variable {name} is already mapped")
        self.name = name


class HoistDependency(FccError):
    error_class = 'HoistDependency'

    def __init__(self, name, function=None):
        if function is None:
            message = f"free variable {name} cannot be hoisted"
        else:
            message = f"extracted function {function} depends on bound variable {name}"
        super().__init__(message)
        self.name = name
        self.function = function


class ArityMismatch(FccError):
    error_class = 'ArityMismatch'


class PipelineError(FccError):
    error_class = 'UsageError'


class ConfigError(FccError):
    error_class = 'ConfigError'
