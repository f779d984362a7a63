"""Exception hierarchy shared across the toolchain."""


class DaoForgeError(Exception):
    """Base class for every error raised by daoforge."""


class ValueErrorBase(DaoForgeError, ValueError):
    pass


class OutOfRange(ValueErrorBase):
    pass


class Malformed(ValueErrorBase):
    pass


class DecodeError(DaoForgeError):
    pass


class ParseError(DaoForgeError):
    """Raised on the first lexical or syntactic failure; carries a Diagnostic."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


class LexError(ParseError):
    pass


class EvalError(DaoForgeError):
    pass


class UnboundIdentifier(EvalError):
    pass


class UnknownProtocol(EvalError):
    pass


class UnknownAction(EvalError):
    pass


class UnknownNetwork(EvalError):
    pass


class TypeMismatch(EvalError):
    pass


class ArityMismatch(EvalError):
    pass


class EmptyBridgePayload(EvalError):
    pass


class RegistryError(DaoForgeError):
    pass


class ProviderError(DaoForgeError):
    pass


class SimulationUnsupported(DaoForgeError):
    pass


class PromptTooLarge(DaoForgeError):
    pass


class ExtractorError(DaoForgeError):
    pass


class SynthesisFailed(DaoForgeError):
    def __init__(self, message, diagnostics=(), attempts=0):
        super().__init__(message)
        self.diagnostics = list(diagnostics)
        self.attempts = attempts


class InterpreterError(DaoForgeError):
    """Failure of the ABI-matching fallback interpreter."""


class AbiFetchError(InterpreterError):
    pass


class NoMatchingFunction(InterpreterError):
    pass


class BindingFailure(InterpreterError):
    pass


class ConfigError(DaoForgeError):
    pass
