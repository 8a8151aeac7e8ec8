"""Exception types shared across modules."""


class HubsolveError(Exception):
    """Base class for all library errors."""


class ParseError(HubsolveError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class ComponentTooLarge(HubsolveError):
    def __init__(self, component, size: int):
        super().__init__(f"component of size {size} exceeds sigma")
        self.component = component
        self.size = size


class NeighborhoodTooLarge(HubsolveError):
    def __init__(self, component, count: int):
        super().__init__(f"component touches {count} hub vertices, exceeds delta")
        self.component = component
        self.count = count


class CapExceeded(HubsolveError):
    """Raised when a desk-scale safety cap is hit."""


class InstanceTooLarge(CapExceeded):
    pass


class BlockTooLarge(CapExceeded):
    pass


class CombinatorialBlowup(CapExceeded):
    pass


class ParamsTooLarge(CapExceeded):
    pass


class GadgetTooLarge(CapExceeded):
    pass


class WildcardPropertyViolated(HubsolveError):
    pass


class BadArity(HubsolveError):
    pass
