from __future__ import annotations

from typing import Any, Dict, Optional


class DeltaKoszulError(Exception):
    """Base class for every error raised by the engine."""

    def __init__(self, message: str = "", **payload: Any) -> None:
        super().__init__(message)
        self.message = message
        self.payload: Dict[str, Any] = dict(payload)

    @property
    def key(self) -> Optional[Any]:
        return self.payload.get("key")

    @property
    def level(self) -> Optional[int]:
        return self.payload.get("level")

    @property
    def witness(self) -> Optional[Any]:
        return self.payload.get("witness")


# --- exact linear algebra ---
class FieldMismatch(DeltaKoszulError):
    pass


class AmbientMismatch(DeltaKoszulError):
    pass


class DivisionByZero(DeltaKoszulError, ZeroDivisionError):
    pass


# --- algebras ---
class BadRelation(DeltaKoszulError):
    pass


class ValidationFail(DeltaKoszulError):
    pass


class ModeMismatch(DeltaKoszulError):
    pass


class TruncationExceeded(DeltaKoszulError):
    pass


# --- modules ---
class BadVector(DeltaKoszulError):
    pass


class InvalidModule(DeltaKoszulError):
    pass


class InvalidMorphism(DeltaKoszulError):
    pass


# --- profiles ---
class ProfileExhausted(DeltaKoszulError):
    pass


class BadProfile(DeltaKoszulError):
    pass


# --- short exact sequences / horseshoe ---
class NotInjective(DeltaKoszulError):
    pass


class NotSurjective(DeltaKoszulError):
    pass


class NotExactAtMiddle(DeltaKoszulError):
    pass


class ConditionFails(DeltaKoszulError):
    pass


class PreconditionNotCertified(DeltaKoszulError):
    pass


class MHLNotEstablished(DeltaKoszulError):
    pass


# --- lab ---
class GenerationFailed(DeltaKoszulError):
    pass


# --- input language ---
class ParseError(DeltaKoszulError):
    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"
