"""Hermitian Pauli operators and stabilizer groups with exact signs.

An operator is stored as (x | z) bit vectors plus a sign in {+1, -1};
imaginary phases cannot be represented and multiplying anticommuting
operators raises.  Stabilizer groups validate commutation and
independence at construction, which also rules out -I as a product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caps import enum_cap
from .errors import CapExceeded, FormatError
from .gf2 import BitMatrix, BitVector, nullspace, rank, symplectic_product

_LETTERS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_LETTER_BITS = {v: k for k, v in _LETTERS.items()}


@dataclass(frozen=True)
class PauliOperator:
    """sign * (tensor product of I/X/Y/Z letters) on n qubits."""

    n: int
    x: BitVector
    z: BitVector
    sign: int = 1

    def __post_init__(self):
        if self.x.length != self.n or self.z.length != self.n:
            raise ValueError("x/z length must equal n")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @staticmethod
    def identity(n: int) -> "PauliOperator":
        return PauliOperator(n, BitVector.zeros(n), BitVector.zeros(n))

    @staticmethod
    def from_string(text: str) -> "PauliOperator":
        text = text.strip()
        sign = 1
        if text[:1] in "+-−":
            if text[0] != "+":
                sign = -1
            text = text[1:]
        if not text or any(c not in "IXYZ" for c in text):
            raise ValueError(f"not a Pauli string: {text!r}")
        bits = [_LETTER_BITS[c] for c in text]
        return PauliOperator(
            len(bits),
            BitVector.from_bits([b[0] for b in bits]),
            BitVector.from_bits([b[1] for b in bits]),
            sign)

    @staticmethod
    def from_xz_phase(n: int, x: int, z: int, phase_exp: int) -> "PauliOperator":
        """Build i^phase_exp * X^x Z^z; requires the result to be Hermitian."""
        y = (x & z).bit_count()
        e = (phase_exp - y) % 4
        if e % 2:
            raise ValueError("operator has an imaginary phase")
        return PauliOperator(n, BitVector(n, x), BitVector(n, z),
                             1 if e == 0 else -1)

    def letter(self, i: int) -> str:
        return _LETTERS[(self.x[i], self.z[i])]

    def support(self) -> tuple[int, ...]:
        return BitVector(self.n, self.x.bits | self.z.bits).support()

    def support_mask(self) -> int:
        return self.x.bits | self.z.bits

    def weight(self) -> int:
        return (self.x.bits | self.z.bits).bit_count()

    def is_identity(self) -> bool:
        return self.x.bits == 0 and self.z.bits == 0

    def symplectic(self) -> BitVector:
        """(x | z) as one vector of length 2n."""
        return self.x.concat(self.z)

    def commutes_with(self, other: "PauliOperator") -> bool:
        return symplectic_product(self.symplectic(), other.symplectic()) == 0

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        x1, z1, x2, z2 = self.x.bits, self.z.bits, other.x.bits, other.z.bits
        x, z = x1 ^ x2, z1 ^ z2
        # Writing each factor as sign * i^y X^x Z^z and commuting Z^z1 past
        # X^x2 costs (-1)^(z1.x2); the y-counts rebalance the i's.
        e = ((x1 & z1).bit_count() + (x2 & z2).bit_count()
             - (x & z).bit_count() + 2 * (z1 & x2).bit_count()) % 4
        if e % 2:
            raise ValueError("product of anticommuting operators is not Hermitian")
        sign = self.sign * other.sign * (1 if e == 0 else -1)
        return PauliOperator(self.n, BitVector(self.n, x), BitVector(self.n, z),
                             sign)

    def negate(self) -> "PauliOperator":
        return PauliOperator(self.n, self.x, self.z, -self.sign)

    def to_string(self) -> str:
        body = "".join(self.letter(i) for i in range(self.n))
        return ("+" if self.sign == 1 else "-") + body

    def __str__(self) -> str:
        return self.to_string()

    def sort_key(self) -> tuple[int, int, int]:
        return (self.x.bits, self.z.bits, 0 if self.sign == 1 else 1)


class StabilizerGroup:
    """Abelian group of Hermitian Paulis given by independent generators.

    Construction checks pairwise commutation and GF(2) independence of the
    (x | z) rows; independence of signed Hermitian generators implies the
    group never contains -I.
    """

    def __init__(self, n: int, generators):
        self.n = n
        self.generators: tuple[PauliOperator, ...] = tuple(generators)
        for g in self.generators:
            if g.n != n:
                raise ValueError("generator qubit count mismatch")
            if g.is_identity():
                raise ValueError("identity is not a valid generator")
        rows = [g.symplectic() for g in self.generators]
        for a, b in itertools.combinations(rows, 2):
            if symplectic_product(a, b):
                raise ValueError("generators must commute")
        if rows and rank(BitMatrix(2 * n, tuple(rows))) != len(rows):
            raise ValueError("generators must be independent over GF(2)")

    @property
    def dim(self) -> int:
        """log2 of the group order (number of independent generators)."""
        return len(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def enumerate_elements(self, cap: int | None = None):
        """Yield all 2^dim elements, identity first, in Gray-code order."""
        k = self.dim
        limit = enum_cap(cap)
        if 1 << k > limit:
            raise CapExceeded(f"group has 2^{k} elements; cap is {limit}")
        cur = PauliOperator.identity(self.n)
        yield cur
        for m in range(1, 1 << k):
            cur = cur * self.generators[(m & -m).bit_length() - 1]
            yield cur

    def elements(self, cap: int | None = None) -> list[PauliOperator]:
        return list(self.enumerate_elements(cap))

    def _outside_matrix(self, omega) -> BitMatrix:
        """Generators' (x | z) rows masked to coordinates outside omega."""
        keep = 0
        for i in omega:
            if not 0 <= i < self.n:
                raise ValueError(f"qubit {i} out of range")
            keep |= 1 << i
        comp = ((1 << self.n) - 1) & ~keep
        rows = [BitVector(2 * self.n,
                          (g.x.bits & comp) | ((g.z.bits & comp) << self.n))
                for g in self.generators]
        return BitMatrix(2 * self.n, tuple(rows))

    def supported_dim(self, omega) -> int:
        """dim of the subgroup of elements supported inside omega."""
        if not self.generators:
            return 0
        return self.dim - rank(self._outside_matrix(omega))

    def subgroup_supported_in(self, omega) -> "StabilizerGroup":
        """The subgroup S_omega of elements with support inside omega."""
        if not self.generators:
            return StabilizerGroup(self.n, ())
        coeffs = nullspace(self._outside_matrix(omega).transpose())
        gens = []
        for c in coeffs.rows:
            g = PauliOperator.identity(self.n)
            for i in c.support():
                g = g * self.generators[i]
            gens.append(g)
        return StabilizerGroup(self.n, gens)

    def distance(self, cap: int | None = None) -> int:
        """Minimum weight over non-identity elements (enumerative)."""
        best = self.n + 1
        for g in self.enumerate_elements(cap):
            if not g.is_identity():
                best = min(best, g.weight())
        if best > self.n:
            raise ValueError("group is trivial; distance undefined")
        return best

    def count_support_in(self, omega) -> int:
        """Number of elements supported inside omega (2^dim of S_omega)."""
        return 1 << self.supported_dim(omega)

    def count_support_eq(self, omega, cap: int | None = None) -> int:
        """Number of elements whose support is exactly omega."""
        mask = 0
        for i in omega:
            mask |= 1 << i
        sub = self.subgroup_supported_in(omega)
        return sum(1 for g in sub.enumerate_elements(cap)
                   if g.support_mask() == mask)

    def is_bell_pair_free(self) -> tuple[bool, tuple[int, int] | None]:
        """False with a witness pair {i,j} when dim S_{i,j} = 2.

        A rank-2 subgroup on two qubits means those qubits carry a full
        two-qubit stabilizer factor (Bell-like or a product of two fixed
        qubits); either way the minimal-support criterion is inapplicable.
        """
        for i, j in itertools.combinations(range(self.n), 2):
            if self.supported_dim((i, j)) == 2:
                return False, (i, j)
        return True, None

    def minimal_elements(self, cap: int | None = None) -> "MinimalElementReport":
        """All elements of minimal (nonempty, inclusion-minimal) support."""
        supports: dict[int, list[PauliOperator]] = {}
        for g in self.enumerate_elements(cap):
            if not g.is_identity():
                supports.setdefault(g.support_mask(), []).append(g)
        minimal_masks: list[int] = []
        for mask in sorted(supports, key=lambda m: (m.bit_count(), m)):
            if not any(s & mask == s for s in minimal_masks):
                minimal_masks.append(mask)
        elems = [g for m in minimal_masks for g in supports[m]]
        elems.sort(key=PauliOperator.sort_key)
        return MinimalElementReport(self.n, tuple(elems))

    def css_split(self) -> tuple["StabilizerGroup", "StabilizerGroup"] | None:
        """(X-type subgroup, Z-type subgroup) when they generate S, else None."""
        if not self.generators:
            return StabilizerGroup(self.n, ()), StabilizerGroup(self.n, ())
        zmat = BitMatrix(self.n, tuple(g.z for g in self.generators))
        xmat = BitMatrix(self.n, tuple(g.x for g in self.generators))
        x_coeffs = nullspace(zmat.transpose())
        z_coeffs = nullspace(xmat.transpose())
        if x_coeffs.num_rows + z_coeffs.num_rows != self.dim:
            return None
        def build(coeffs):
            gens = []
            for c in coeffs.rows:
                g = PauliOperator.identity(self.n)
                for i in c.support():
                    g = g * self.generators[i]
                gens.append(g)
            return StabilizerGroup(self.n, gens)
        return build(x_coeffs), build(z_coeffs)

    def is_css(self) -> bool:
        return self.css_split() is not None

    def msc_certificate(self, minimal_elems=None,
                        cap: int | None = None) -> "MscCertificate":
        """Minimal-support certificate for LU equivalence implying LC.

        CERTIFIED when the state is free of Bell pairs and X, Y and Z all
        occur on every qubit within the group generated by minimal-support
        elements.  ``minimal_elems`` may supply externally proven minimal
        elements as a fast path; otherwise they are enumerated.
        """
        free, witness = self.is_bell_pair_free()
        if not free:
            return MscCertificate("INCONCLUSIVE", "bell_pair", witness, ())
        if minimal_elems is None:
            minimal_elems = self.minimal_elements(cap).elements
        letters = _letters_of_generated_group(self.n, minimal_elems)
        for q, ls in enumerate(letters):
            if ls != frozenset("XYZ"):
                missing = "".join(sorted(set("XYZ") - ls))
                return MscCertificate("INCONCLUSIVE", "coverage",
                                      (q, missing), letters)
        return MscCertificate("CERTIFIED", None, None, letters)


def _letters_of_generated_group(n: int,
                                elems) -> tuple[frozenset[str], ...]:
    """Per-qubit letters occurring in the group generated by ``elems``.

    The letter at a fixed qubit is a homomorphism into Z2 x Z2, so the
    letters realized by the generated group are exactly the subgroup
    generated by the generators' letters: two distinct non-identity
    letters already give all three.
    """
    out = []
    for q in range(n):
        seen = {g.letter(q) for g in elems} - {"I"}
        out.append(frozenset("XYZ") if len(seen) >= 2 else frozenset(seen))
    return tuple(out)


@dataclass(frozen=True)
class MinimalElementReport:
    """Minimal-support elements, canonically sorted by (x, z, sign)."""

    n: int
    elements: tuple[PauliOperator, ...]

    @property
    def supports(self) -> tuple[tuple[int, ...], ...]:
        seen: list[tuple[int, ...]] = []
        for g in self.elements:
            s = g.support()
            if s not in seen:
                seen.append(s)
        return tuple(sorted(seen))

    @property
    def covered_letters(self) -> tuple[frozenset[str], ...]:
        return _letters_of_generated_group(self.n, self.elements)


@dataclass(frozen=True)
class MscCertificate:
    """Outcome of the minimal-support check.

    ``hypothesis`` records the entanglement variant actually tested
    (freedom from Bell pairs rather than full entanglement).
    """

    status: str                      # CERTIFIED | INCONCLUSIVE
    reason: str | None
    witness: object
    letters: tuple[frozenset[str], ...]
    hypothesis: str = "bell_pair_free"

    @property
    def certified(self) -> bool:
        return self.status == "CERTIFIED"

    def line(self) -> str:
        if self.certified:
            return f"CERTIFIED theorem=msc details=qubits={len(self.letters)}"
        return (f"INCONCLUSIVE theorem=msc reason={self.reason}"
                f" witness={_fmt_witness(self.witness)}")


def _fmt_witness(w) -> str:
    if isinstance(w, tuple):
        return "(" + ",".join(str(p) for p in w) + ")"
    return str(w)


def parse_stabilizer(text: str) -> StabilizerGroup:
    """Parse one generator per line: optional +/- sign then I/X/Y/Z letters."""
    gens = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            g = PauliOperator.from_string(line)
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from exc
        if n is None:
            n = g.n
        elif g.n != n:
            raise FormatError(f"expected {n} letters, got {g.n}", lineno)
        gens.append(g)
    if n is None:
        raise FormatError("no generators found")
    try:
        return StabilizerGroup(n, gens)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_stabilizer(group: StabilizerGroup) -> str:
    return "\n".join(g.to_string() for g in group.generators) + "\n"
