class AkaError(Exception):
    """Base class for every error raised by the protocol package"""


class UsageError(AkaError, ValueError):
    pass


class ConfigurationError(AkaError):
    pass


class SuiteUnavailableError(AkaError):
    def __init__(self, name: str, reason: str = ""):
        self.name = name
        self.reason = reason
        super().__init__(f"KEM suite '{name}' unavailable{': ' + reason if reason else ''}")


class EncodingError(AkaError, ValueError):
    pass


class ParseError(AkaError, ValueError):
    def __init__(self, offset: int, reason: str):
        self.offset = offset
        self.reason = reason
        super().__init__(f"parse error at offset {offset}: {reason}")


class DecapsulationError(AkaError):
    pass


class AeadAuthenticationError(AkaError):
    pass


class UeSilentAbort(AkaError):
    """UE stops the session without emitting anything on the radio channel"""

    def __init__(self, step: str):
        self.step = step
        super().__init__(f"UE aborted silently at {step}")


class GutiFallback(AkaError):
    """UE holds no usable GUTI state, the caller must run the SUPI path"""


class HnAbort(AkaError):
    IDENTIFICATION_REJECTED = "IDENTIFICATION_REJECTED"
    VECTOR_REJECTED = "VECTOR_REJECTED"

    def __init__(self, code: str):
        self.code = code
        super().__init__(code)


class SnAbort(AkaError):
    def __init__(self, step: str, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"SN aborted at {step}: {reason}")


class ThreatModelViolation(AkaError):
    pass
