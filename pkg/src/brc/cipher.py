"""Involutory-multiplier cipher on the dihedral span of the ring.

A message of L bytes becomes the element p = sum_i p_i * D(i); the
ciphertext is p * k for a key element k (a product of basic degrees,
hence self-inverse, so decryption is the same multiplication).  The
product never raises a dihedral index, so ciphertext support stays
inside the window {D(1), ..., D(L)}.

File formats (text, strict):

    key file:           BRC-KEY v1
                        S 2 3

    ciphertext file:    BRC-CT v1
                        L 5
                        <canonical element rendering>

The declared length L travels with the ciphertext: only nonzero
coefficients are stored, so trailing zeros would otherwise be lost.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .burnside import (
    O2,
    SO2,
    BurnsideElement,
    D,
    ElementFormatError,
    KeySet,
    key_element,
)

__all__ = [
    "MessageError",
    "SupportWindowError",
    "FileFormatError",
    "Ciphertext",
    "encode_text",
    "decode_text",
    "ring_encode",
    "ring_decode",
    "encrypt",
    "decrypt",
    "encrypt_message",
    "decrypt_message",
    "write_key_file",
    "read_key_file",
    "write_ciphertext_file",
    "read_ciphertext_file",
    "KEY_MAGIC",
    "CT_MAGIC",
]

KEY_MAGIC = "BRC-KEY v1"
CT_MAGIC = "BRC-CT v1"


class MessageError(ValueError):
    """Message bytes cannot be encoded or decoded (empty or non-ASCII)."""


class SupportWindowError(ValueError):
    """Element support escapes the dihedral window {D(1), ..., D(L)}."""


class FileFormatError(ValueError):
    """Key or ciphertext file violates its strict text format."""


def _check_window(element: BurnsideElement, length: int, what: str) -> None:
    if element.coeff(O2) or element.coeff(SO2):
        raise SupportWindowError(f"{what} has support outside the dihedral span")
    for k in element.dihedral_indices():
        if k > length:
            raise SupportWindowError(f"{what} has support at D{k}, outside window L={length}")


def _check_key(key: BurnsideElement) -> None:
    if key.coeff(O2) != 1:
        raise ValueError("not a key element: coefficient at O2 must be 1")


@dataclass(frozen=True)
class Ciphertext:
    """Encrypted element together with its declared message length."""

    element: BurnsideElement
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"declared length must be >= 1, got {self.length}")
        _check_window(self.element, self.length, "ciphertext")


def encode_text(data: bytes | str) -> list[int]:
    """Map 7-bit text to its integer vector, one code per byte."""
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise MessageError(f"non-ASCII character at position {exc.start}") from None
    if not data:
        raise MessageError("empty message")
    for pos, b in enumerate(data):
        if b > 127:
            raise MessageError(f"non-ASCII byte 0x{b:02x} at position {pos}")
    return list(data)


def decode_text(values: Sequence[int]) -> bytes:
    """Inverse of encode_text; every value must be a 7-bit code."""
    if not values:
        raise MessageError("empty vector")
    for pos, v in enumerate(values):
        if not 0 <= v <= 127:
            raise MessageError(f"recovered value {v} at position {pos} is outside [0, 127]")
    return bytes(values)


def ring_encode(values: Sequence[int]) -> BurnsideElement:
    """Element with coefficient values[i-1] at D(i); zeros are dropped."""
    if not values:
        raise ValueError("empty plaintext vector")
    return BurnsideElement({D(i): v for i, v in enumerate(values, start=1) if v})


def ring_decode(element: BurnsideElement, length: int) -> list[int]:
    """Coefficient vector of `element` on D(1)..D(length)."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    _check_window(element, length, "element")
    return [element.coeff(D(i)) for i in range(1, length + 1)]


def encrypt(plaintext: BurnsideElement, length: int, key: BurnsideElement) -> Ciphertext:
    """Multiply the plaintext element by the key inside window `length`.

    The product of a genuine key never expands the support, so a window
    violation in the result signals a corrupted key.
    """
    _check_window(plaintext, length, "plaintext")
    _check_key(key)
    product = plaintext * key
    _check_window(product, length, "ciphertext (corrupted key?)")
    return Ciphertext(element=product, length=length)


def decrypt(ciphertext: Ciphertext, key: BurnsideElement) -> BurnsideElement:
    """Apply the same multiplication; the key is its own inverse."""
    _check_key(key)
    product = ciphertext.element * key
    _check_window(product, ciphertext.length, "plaintext (corrupted key?)")
    return product


def encrypt_message(data: bytes | str, key_set: KeySet) -> Ciphertext:
    """encode_text + ring_encode + encrypt in one step."""
    values = encode_text(data)
    return encrypt(ring_encode(values), len(values), key_element(key_set))


def decrypt_message(ciphertext: Ciphertext, key_set: KeySet) -> bytes:
    """decrypt + ring_decode + decode_text in one step."""
    plain = decrypt(ciphertext, key_element(key_set))
    return decode_text(ring_decode(plain, ciphertext.length))


def write_key_file(path: str | Path, key_set: KeySet) -> None:
    indices = " ".join(str(i) for i in key_set)
    Path(path).write_text(f"{KEY_MAGIC}\nS {indices}\n")


def read_key_file(path: str | Path) -> KeySet:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise FileFormatError(f"key file must have exactly 2 lines, got {len(lines)}")
    if lines[0] != KEY_MAGIC:
        raise FileFormatError(f"bad key file header {lines[0]!r}")
    parts = lines[1].split()
    if not parts or parts[0] != "S":
        raise FileFormatError(f"bad key line {lines[1]!r}")
    try:
        indices = [int(tok) for tok in parts[1:]]
    except ValueError:
        raise FileFormatError(f"non-integer key index in {lines[1]!r}") from None
    if indices != sorted(set(indices)):
        raise FileFormatError("key indices must be strictly increasing")
    try:
        return KeySet(indices)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def write_ciphertext_file(path: str | Path, ciphertext: Ciphertext) -> None:
    body = ciphertext.element.render()
    Path(path).write_text(f"{CT_MAGIC}\nL {ciphertext.length}\n{body}\n")


def read_ciphertext_file(path: str | Path) -> Ciphertext:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 3:
        raise FileFormatError("truncated ciphertext file")
    if lines[0].strip() != CT_MAGIC:
        raise FileFormatError(f"bad ciphertext header {lines[0]!r}")
    length_parts = lines[1].split()
    if len(length_parts) != 2 or length_parts[0] != "L" or not length_parts[1].lstrip("-").isdigit():
        raise FileFormatError(f"bad length line {lines[1]!r}")
    length = int(length_parts[1])
    if length < 1:
        raise FileFormatError(f"declared length must be >= 1, got {length}")
    try:
        element = BurnsideElement.parse("\n".join(lines[2:]))
    except ElementFormatError as exc:
        raise FileFormatError(f"bad element body: {exc}") from None
    try:
        return Ciphertext(element=element, length=length)
    except SupportWindowError as exc:
        raise FileFormatError(str(exc)) from None
