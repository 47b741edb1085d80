"""
The orbispace Burnside ring: formal integer combinations of isomorphism classes of finite groups.

Multiplication is induced by the direct product, and the ring carries the characters chi_orb (1/|G| on a basis
class), chi_Q (1 on a basis class), chi_K(n) (tuple-orbit counts) and phi_K (conjugacy classes of monomorphisms
from K), together with the formal loop operator and the p-typical shift operator.
"""

import re
import threading
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from loguru import logger
from pydantic import TypeAdapter

from chromatic.census import chi_kn_finite, is_p_power
from chromatic.errors import UnknownSpec
from chromatic.groups import (
    FiniteGroup,
    GroupFingerprint,
    centralizer,
    direct_product,
    group_spec,
    is_isomorphic,
    monomorphism_classes,
    standard_group,
)
from chromatic.models import BurnsideTerm
from chromatic.utils import require_prime


@dataclass(frozen=True)
class BasisKey:
    """An isomorphism class of finite groups: a fingerprint bucket and a slot inside it."""

    fingerprint: GroupFingerprint
    slot: int
    group: FiniteGroup = field(compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return self.fingerprint.order

    def sort_key(self) -> tuple:
        """Order basis classes by group order, then by invariants, then by slot."""
        fp = self.fingerprint
        return (
            fp.order,
            fp.element_order_histogram,
            fp.class_size_multiset,
            fp.derived_series_orders,
            fp.center_order,
            self.slot,
        )


class BasisRegistry:
    """
    Append-only table of canonical representatives, one per isomorphism class seen so far.

    Reads are unlocked; insertion re-checks the bucket under a lock so concurrent callers agree on one key.
    """

    def __init__(self):
        self._buckets: dict[GroupFingerprint, list[FiniteGroup]] = {}
        self._lock = threading.Lock()

    def key_for(self, group: FiniteGroup) -> BasisKey:
        """The basis key of the isomorphism class of `group`, registering it when it is new."""
        fingerprint = group.fingerprint
        bucket = self._buckets.get(fingerprint, [])
        scanned = len(bucket)
        for slot in range(scanned):
            if is_isomorphic(bucket[slot], group):
                return BasisKey(fingerprint, slot, bucket[slot])

        with self._lock:
            bucket = self._buckets.setdefault(fingerprint, [])
            for slot in range(scanned, len(bucket)):
                if is_isomorphic(bucket[slot], group):
                    return BasisKey(fingerprint, slot, bucket[slot])
            bucket.append(group)
            logger.debug(f"registered basis class {group_spec(group)} (order {group.order}, slot {len(bucket) - 1})")
            return BasisKey(fingerprint, len(bucket) - 1, group)

    def __len__(self) -> int:
        return sum(len(bucket) for bucket in self._buckets.values())


registry = BasisRegistry()


class BurnsideClass:
    """An element of the orbispace Burnside ring. Immutable; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisKey, int] | None = None):
        self._terms: dict[BasisKey, int] = {
            key: coefficient
            for key, coefficient in sorted((terms or {}).items(), key=lambda item: item[0].sort_key())
            if coefficient
        }

    @property
    def terms(self) -> dict[BasisKey, int]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[BasisKey, int]]:
        """The nonzero terms in basis order."""
        return self._terms.items()

    def __add__(self, other: "BurnsideClass") -> "BurnsideClass":
        if not isinstance(other, BurnsideClass):
            return NotImplemented
        combined = dict(self._terms)
        for key, coefficient in other._terms.items():
            combined[key] = combined.get(key, 0) + coefficient
        return BurnsideClass(combined)

    def __neg__(self) -> "BurnsideClass":
        return BurnsideClass({key: -coefficient for key, coefficient in self._terms.items()})

    def __sub__(self, other: "BurnsideClass") -> "BurnsideClass":
        if not isinstance(other, BurnsideClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "BurnsideClass | int") -> "BurnsideClass":
        if isinstance(other, int):
            return scalar_multiply(self, other)
        if isinstance(other, BurnsideClass):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other: int) -> "BurnsideClass":
        if isinstance(other, int):
            return scalar_multiply(self, other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideClass):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        text = ""
        for key, coefficient in self._terms.items():
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            term = f"[{group_spec(key.group)}]" if magnitude == 1 else f"{magnitude}*[{group_spec(key.group)}]"
            text += (f"-{term}" if sign == "-" else term) if not text else f" {sign} {term}"
        return text

    def __repr__(self) -> str:
        return f"BurnsideClass({self})"


def class_of(group: FiniteGroup) -> BurnsideClass:
    """The basis class `[B_gl G]`."""
    return BurnsideClass({registry.key_for(group): 1})


def zero_class() -> BurnsideClass:
    """The additive identity."""
    return BurnsideClass()


def unit_class() -> BurnsideClass:
    """The multiplicative identity `[B_gl 1]`."""
    return class_of(standard_group("C1"))


def add(x: BurnsideClass, y: BurnsideClass) -> BurnsideClass:
    """`x + y`."""
    return x + y


def negate(x: BurnsideClass) -> BurnsideClass:
    """`-x`."""
    return -x


def scalar_multiply(x: BurnsideClass, k: int) -> BurnsideClass:
    """`k * x`."""
    return BurnsideClass({key: k * coefficient for key, coefficient in x.items()})


@lru_cache(maxsize=None)
def _product_key(left: BasisKey, right: BasisKey) -> BasisKey:
    """Basis key of `left x right`."""
    return registry.key_for(direct_product(left.group, right.group))


def multiply(x: BurnsideClass, y: BurnsideClass) -> BurnsideClass:
    """
    Bilinear extension of `[B_gl G] * [B_gl K] = [B_gl (G x K)]`.

    Raises:
        ClosureExceedsBound: When a product group exceeds `settings.max_order`.
    """
    result: dict[BasisKey, int] = {}
    for left, a in x.items():
        for right, b in y.items():
            key = _product_key(left, right)
            result[key] = result.get(key, 0) + a * b
    return BurnsideClass(result)


def chi_orb(x: BurnsideClass) -> Fraction:
    """Orbifold Euler characteristic: `sum coefficient / |G|`."""
    return sum((Fraction(coefficient, key.order) for key, coefficient in x.items()), Fraction(0))


def chi_q(x: BurnsideClass) -> int:
    """Rational Euler characteristic: every basis class contributes 1."""
    return sum(coefficient for _, coefficient in x.items())


def chi_kn(x: BurnsideClass, p: int, n: int) -> int:
    """Morava K(n) Euler characteristic at `p`, extended linearly from `chi_kn_finite`."""
    return sum(coefficient * chi_kn_finite(key.group, p, n) for key, coefficient in x.items())


def phi_k(x: BurnsideClass, k: FiniteGroup) -> int:
    """`phi_K`: conjugacy classes of monomorphisms `K -> G`, extended linearly."""
    return sum(coefficient * monomorphism_classes(k, key.group) for key, coefficient in x.items())


@lru_cache(maxsize=None)
def _loop_of_key(key: BasisKey) -> BurnsideClass:
    """Loop of one basis class: its centralizers over conjugacy classes."""
    group = key.group
    result = BurnsideClass()
    for representative in group.conjugacy_classes.representatives:
        result = result + class_of(centralizer(group, [representative]))
    return result


def loop(x: BurnsideClass) -> BurnsideClass:
    """Formal loop operator: `[B_gl G] -> sum over conjugacy classes [g] of [B_gl C<g>]`."""
    result = BurnsideClass()
    for key, coefficient in x.items():
        result = result + coefficient * _loop_of_key(key)
    return result


@lru_cache(maxsize=None)
def _shift_of_key(key: BasisKey, p: int) -> BurnsideClass:
    """One p-shift of a basis class: its centralizers over p-power conjugacy classes."""
    group = key.group
    result = BurnsideClass()
    for representative in group.conjugacy_classes.representatives:
        if is_p_power(group.element_order(representative), p):
            result = result + class_of(centralizer(group, [representative]))
    return result


def p_shift(x: BurnsideClass, p: int, n: int) -> BurnsideClass:
    """
    The p-typical shift: `[B_gl G] -> sum over orbits [g_1..g_n] of G_{n,p} of [B_gl C<g_1..g_n>]`.

    Computed as `n` one-step shifts, which walk the same orbit set as the `n`-tuple census.

    Raises:
        NotPrime: When `p` is not a prime.
    """
    require_prime(p)
    if n < 0:
        raise ValueError(f"Arity must be non-negative, got {n}.")
    for _ in range(n):
        shifted = BurnsideClass()
        for key, coefficient in x.items():
            shifted = shifted + coefficient * _shift_of_key(key, p)
        x = shifted
    return x


# ---------------------------------------------------------------------------------------------------------------------
# text and JSON forms
# ---------------------------------------------------------------------------------------------------------------------

_COEFFICIENT_TERM = re.compile(r"^(\d+)\s*\*\s*(.+)$")


def parse_class_expression(text: str) -> BurnsideClass:
    """
    Parse `+-k*SPEC` terms joined by `+` / `-`, e.g. `"D8 + D8 - C4"` or `"2*C2 - C4"`. `"0"` is the zero class.

    Raises:
        UnknownSpec: When a term is not a group spec.
    """
    text = text.replace("−", "-").strip()
    if text == "0":
        return zero_class()

    result = zero_class()
    sign, expecting_term = 1, True
    for token in (t.strip() for t in re.split(r"([+-])", text)):
        if not token:
            continue
        if token in "+-":
            sign *= -1 if token == "-" else 1
            expecting_term = True
            continue
        if not expecting_term:
            raise UnknownSpec(f"Missing operator before {token!r} in {text!r}.")
        match = _COEFFICIENT_TERM.match(token)
        coefficient, spec = (int(match.group(1)), match.group(2).strip()) if match else (1, token)
        result = result + (sign * coefficient) * class_of(standard_group(spec))
        sign, expecting_term = 1, False

    if expecting_term:
        raise UnknownSpec(f"Incomplete class expression {text!r}.")
    return result


_TERMS = TypeAdapter(list[BurnsideTerm])


def class_terms(x: BurnsideClass) -> list[BurnsideTerm]:
    """The terms of `x` as serializable rows, in basis order."""
    return [BurnsideTerm(group=group_spec(key.group), coefficient=coefficient) for key, coefficient in x.items()]


def dump_class(x: BurnsideClass) -> str:
    """Serialize as a JSON list of `{"group": <group-spec>, "coefficient": <int>}`."""
    return _TERMS.dump_json(class_terms(x)).decode()


def load_class(text: str) -> BurnsideClass:
    """Inverse of `dump_class`."""
    result = zero_class()
    for term in _TERMS.validate_json(text):
        result = result + term.coefficient * class_of(standard_group(term.group))
    return result
