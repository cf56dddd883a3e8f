from typing import Optional, Tuple

from pydantic import ValidationError

from utils.logger import setup_logger


class SawModulatorError(Exception):
    """Base class for every failure raised by the toolkit."""

    exit_code: int = 1


class InputError(SawModulatorError, ValueError):
    """Malformed or physically invalid input (files, shapes, ranges)."""

    exit_code = 2


class MaterialConfigError(InputError):
    """A material document is missing a key or violates an invariant."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class ConvergenceError(SawModulatorError, RuntimeError):
    """A numerical search or fit did not reach its tolerance."""

    exit_code = 3


class NotSubsonicError(ConvergenceError):
    """Trial velocity does not yield four decaying partial waves."""


class DegeneratePhysicsError(SawModulatorError, ArithmeticError):
    """The requested quantity is undefined for this configuration."""

    exit_code = 4


def first_validation_error(error: ValidationError) -> Tuple[str, str]:
    """Dotted key and message of the first problem in a pydantic error."""
    first = error.errors()[0]
    location = [str(part) for part in first["loc"] if not isinstance(part, int)]
    return ".".join(location) or "document", first["msg"]


class ErrorHandler:
    def __init__(self, log_file: Optional[str] = None):
        # the rendered `error:` line is the console output; the log goes to file
        self.logger = setup_logger("sawmod.errors", log_file, console=False)

    def handle_exception(self, exception: Exception) -> str:
        """Log an exception and return its single-line `error:` message."""
        exception_type = type(exception).__name__
        detail = " ".join(str(exception).split())
        self.logger.error(f"{exception_type}: {detail}")
        return f"error: {exception_type}: {detail}"

    @staticmethod
    def exit_code(exception: Exception) -> int:
        if isinstance(exception, SawModulatorError):
            return exception.exit_code
        # unreadable files surface as OSError before any domain validation
        if isinstance(exception, (OSError, ValueError)):
            return InputError.exit_code
        return SawModulatorError.exit_code
