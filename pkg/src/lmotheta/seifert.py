"""Seifert data for boundary links, the Alexander matrix and the Alexander polynomial."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .ncmatrix import NCMatrix
from .ncseries import K, KP, NCSeries, Truncation, exp_variable
from .scalars import LaurentPoly, det_exact, laurent_det, rat

KEPT = "kept"
SURGERED = "surgered"

IntMatrix = tuple[tuple[int, ...], ...]


class InvalidBlock(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, diagnostics: "Diagnostics"):
        super().__init__("; ".join(diagnostics.problems))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Component:
    name: str
    genus: int
    role: str = KEPT


@dataclass(frozen=True)
class SeifertData:
    components: tuple[Component, ...]
    seifert: IntMatrix
    framing: int = 1

    @property
    def sizes(self) -> list[int]:
        return [2 * c.genus for c in self.components]

    @property
    def offsets(self) -> list[int]:
        out = [0]
        for s in self.sizes:
            out.append(out[-1] + s)
        return out

    def block(self, i: int, j: int) -> IntMatrix:
        o = self.offsets
        return tuple(tuple(row[o[j] : o[j + 1]]) for row in self.seifert[o[i] : o[i + 1]])

    def index(self, role: str) -> int:
        return next(i for i, c in enumerate(self.components) if c.role == role)

    def reordered(self, order: Sequence[int]) -> "SeifertData":
        """Same link with components listed in the given order."""
        o = self.offsets
        idx = [r for i in order for r in range(o[i], o[i + 1])]
        S = tuple(tuple(self.seifert[a][b] for b in idx) for a in idx)
        return SeifertData(tuple(self.components[i] for i in order), S, self.framing)

    def to_json(self, truncation_order: int | None = None) -> dict:
        obj = {
            "components": [{"name": c.name, "genus": c.genus, "role": c.role} for c in self.components],
            "framing": self.framing,
            "seifert": [list(r) for r in self.seifert],
        }
        if truncation_order is not None:
            obj["truncation_order"] = truncation_order
        return obj

    @classmethod
    def from_json(cls, obj: Mapping) -> "SeifertData":
        """Parse the JSON input format; structural problems raise ValidationError."""
        problems = []
        try:
            comps = tuple(
                Component(str(c["name"]), int(c["genus"]), str(c.get("role", KEPT))) for c in obj["components"]
            )
            S = tuple(tuple(_as_int(x) for x in row) for row in obj.get("seifert", []))
            framing = int(obj.get("framing", 1))
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"malformed input: {exc!r}")
            raise ValidationError(Diagnostics(False, problems)) from None
        return cls(comps, S, framing)


def _as_int(x) -> int:
    if isinstance(x, bool) or int(x) != x:
        raise ValueError(f"non-integer Seifert entry {x!r}")
    return int(x)


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "problems": list(self.problems)}


def _skew(block: IntMatrix) -> list[list[int]]:
    n = len(block)
    return [[block[i][j] - block[j][i] for j in range(n)] for i in range(n)]


def validate(sd: SeifertData, for_surgery: bool = False) -> Diagnostics:
    """Check the boundary-link structure; never raises."""
    problems: list[str] = []
    for c in sd.components:
        if c.genus < 0:
            problems.append(f"component {c.name!r}: negative genus")
        if c.role not in (KEPT, SURGERED):
            problems.append(f"component {c.name!r}: unknown role {c.role!r}")
    if problems:
        return Diagnostics(False, problems)
    n = sum(sd.sizes)
    S = sd.seifert
    if len(S) != n or any(len(r) != n for r in S):
        return Diagnostics(False, [f"Seifert matrix must be {n}x{n} for the declared genera"])
    if sd.framing not in (-1, 1):
        problems.append(f"framing must be -1 or +1, got {sd.framing}")
    m = len(sd.components)
    for i in range(m):
        for j in range(i + 1, m):
            Bij, Bji = sd.block(i, j), sd.block(j, i)
            if any(Bij[a][b] != Bji[b][a] for a in range(len(Bij)) for b in range(len(Bji))):
                problems.append(
                    f"off-diagonal not symmetric: block ({sd.components[i].name}, {sd.components[j].name})"
                )
    for i, c in enumerate(sd.components):
        d = det_exact(_skew(sd.block(i, i)))
        if d != 1:
            problems.append(f"component {c.name!r}: det(S - S*) = {d}, expected 1")
    if for_surgery:
        roles = [c.role for c in sd.components]
        if len(roles) != 2 or roles.count(SURGERED) != 1:
            problems.append("surgery needs exactly one kept and one surgered component")
    return Diagnostics(not problems, problems)


def require_valid(sd: SeifertData, for_surgery: bool = False) -> SeifertData:
    diag = validate(sd, for_surgery)
    if not diag.ok:
        raise ValidationError(diag)
    return sd


def default_letters(sd: SeifertData) -> list[str]:
    """k for kept components, k' for surgered ones."""
    return [KP if c.role == SURGERED else K for c in sd.components]


def build_T(
    sd: SeifertData, exponents: Sequence[object], policy: Truncation, letters: Sequence[str] | None = None
) -> NCMatrix:
    """diag(exp(e_i x_i)) with each entry repeated 2 g_i times."""
    letters = letters or default_letters(sd)
    n = sum(sd.sizes)
    rows = [[0] * n for _ in range(n)]
    o = sd.offsets
    for i, (e, v) in enumerate(zip(exponents, letters)):
        ser = exp_variable(v, e, policy)
        for r in range(o[i], o[i + 1]):
            rows[r][r] = ser
    return NCMatrix(rows, policy)


def alexander_matrix(
    sd: SeifertData,
    values: Sequence[object],
    policy: Truncation,
    hatted: bool = False,
    letters: Sequence[str] | None = None,
) -> NCMatrix:
    """S T(-x/2) - S* T(x/2) with x_i = values[i] * letter_i.

    With ``hatted`` the result is right-multiplied by T(-x/2) restricted to kept
    components, giving S T(-k, -k'/2) - S* T(0, k'/2) in the two-component case.
    """
    letters = letters or default_letters(sd)
    o = sd.offsets
    col_letter, col_val, col_shift = [], [], []
    for i, c in enumerate(sd.components):
        v = rat(values[i])
        shift = -v / 2 if hatted and c.role == KEPT else Fraction(0)
        for _ in range(o[i], o[i + 1]):
            col_letter.append(letters[i])
            col_val.append(v)
            col_shift.append(shift)
    S = sd.seifert
    n = len(S)
    cache: dict = {}

    def ex(letter, scale):
        key = (letter, scale)
        if key not in cache:
            cache[key] = exp_variable(letter, scale, policy)
        return cache[key]

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            a, b = S[i][j], S[j][i]
            v, sh, L = col_val[j], col_shift[j], col_letter[j]
            entry = NCSeries.zero(policy)
            if a:
                entry = entry + ex(L, -v / 2 + sh).scale(a)
            if b:
                entry = entry - ex(L, v / 2 + sh).scale(b)
            row.append(entry)
        rows.append(row)
    return NCMatrix(rows, policy)


def alexander_polynomial(block: Sequence[Sequence[int]]) -> LaurentPoly:
    """Normalized symmetric Alexander polynomial of a single-component Seifert block."""
    n = len(block)
    if any(len(r) != n for r in block) or n % 2:
        raise InvalidBlock("Seifert block must be square of even size")
    if n == 0:
        return LaurentPoly.const(1)
    d = det_exact(_skew(block))
    if d != 1:
        raise InvalidBlock(f"det(S - S*) = {d}, expected 1")
    M = [[LaurentPoly({-1: block[i][j], 1: -block[j][i]}) for j in range(n)] for i in range(n)]
    p = laurent_det(M)
    val = p.at_one()
    if val not in (1, -1):
        raise InvalidBlock(f"unexpected value {val} at t = 1")
    p = p * val
    if not p.is_integral():
        raise InvalidBlock("determinant has half-integer powers of t")
    return p
