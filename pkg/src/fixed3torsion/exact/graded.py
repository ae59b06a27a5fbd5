"""Reduction of polynomials to a free graded module over a polynomial subring."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linalg import InconsistentSystemError, SingularSystemError, SparseSystem
from .rational import QQ
from .sparse import SparsePoly


class NotInModuleError(ArithmeticError):
    """The polynomial has no expansion in the module (corrupted generator data)."""


def monomials_of_weight(weights: Sequence[int], total: int):
    """All exponent tuples e with sum e_i w_i == total (positive weights), in lex order."""
    n = len(weights)
    out = []

    def rec(i, rem, acc):
        if i == n - 1:
            if rem % weights[i] == 0:
                out.append(tuple(acc) + (rem // weights[i],))
            return
        for k in range(rem // weights[i], -1, -1):
            rec(i + 1, rem - k * weights[i], acc + [k])

    if total < 0:
        return out
    if n == 0:
        return [()] if total == 0 else []
    rec(0, total, [])
    return out


@dataclass
class GradedModuleSpec:
    """Ambient polynomial ring, generator definitions of the base ring, and a module basis."""

    ambient_vars: tuple[str, ...]
    ambient_weights: tuple[int, ...]
    generator_names: tuple[str, ...]
    generators: tuple[SparsePoly, ...]
    basis: tuple[SparsePoly, ...]
    basis_labels: tuple[str, ...] = ()

    def __post_init__(self):
        self.generator_weights = tuple(g.weighted_degree() for g in self.generators)
        self.basis_weights = tuple(b.weighted_degree() for b in self.basis)
        seen = set()
        for b in self.basis:
            key = frozenset(b.terms.items())
            if key in seen:
                raise ValueError("basis elements must be pairwise distinct")
            seen.add(key)
        if any(w <= 0 for w in self.generator_weights):
            raise ValueError("generators need positive weight")


@dataclass
class _DegreeSystem:
    unknowns: list
    row_index: dict
    solver: SparseSystem | None


class GradedModule:
    """Expands ambient polynomials as sum_m c_m(generators) * basis_m.

    For each weighted degree D, every candidate product mu(generators) * basis_m of
    weight D is expanded in the ambient ring and the resulting exact linear system is
    factored once and cached. Freeness of the module makes the coefficients unique.
    """

    def __init__(self, spec: GradedModuleSpec):
        self.spec = spec
        self._systems: dict[int, _DegreeSystem] = {}
        self._gen_powers: dict[tuple, SparsePoly] = {}
        g0 = spec.generators[0]
        self._ambient_one = g0.one()

    def _expand_gen_monomial(self, mu: tuple) -> SparsePoly:
        hit = self._gen_powers.get(mu)
        if hit is not None:
            return hit
        if not any(mu):
            val = self._ambient_one
        else:
            k = max(i for i, e in enumerate(mu) if e)
            prev = list(mu)
            prev[k] -= 1
            val = self._expand_gen_monomial(tuple(prev)) * self.spec.generators[k]
        self._gen_powers[mu] = val
        return val

    def system(self, D: int) -> _DegreeSystem:
        if D in self._systems:
            return self._systems[D]
        spec = self.spec
        unknowns = []
        columns_poly = []
        for bi, (b, wb) in enumerate(zip(spec.basis, spec.basis_weights)):
            for mu in monomials_of_weight(spec.generator_weights, D - wb):
                unknowns.append((mu, bi))
                columns_poly.append(self._expand_gen_monomial(mu) * b)
        monos = sorted({e for col in columns_poly for e in col.terms})
        row_index = {e: i for i, e in enumerate(monos)}
        solver = None
        if unknowns:
            cols = [{row_index[e]: c for e, c in col.terms.items()} for col in columns_poly]
            try:
                solver = SparseSystem(cols, len(monos))
            except SingularSystemError as exc:
                raise NotInModuleError(f"degree {D}: candidate products are dependent ({exc})") from exc
        sys_ = _DegreeSystem(unknowns, row_index, solver)
        self._systems[D] = sys_
        return sys_

    def reduce(self, f: SparsePoly) -> dict[int, SparsePoly]:
        """Return {basis index: coefficient polynomial in the generators}."""
        spec = self.spec
        if f.vars != spec.ambient_vars:
            f = f.embed(spec.ambient_vars)
        f = f.with_weights(spec.ambient_weights)
        if not f:
            return {}
        try:
            D = f.weighted_degree()
        except ValueError as exc:
            raise ValueError(f"graded_module_reduce needs a homogeneous input: {exc}") from None
        sys_ = self.system(D)
        if sys_.solver is None:
            raise NotInModuleError(f"no module elements in degree {D}")
        rhs = {}
        for e, c in f.terms.items():
            i = sys_.row_index.get(e)
            if i is None:
                raise NotInModuleError(f"monomial {e} cannot occur in degree {D}")
            rhs[i] = c
        try:
            x = sys_.solver.solve(rhs)
        except InconsistentSystemError as exc:
            raise NotInModuleError(str(exc)) from None
        out: dict[int, dict] = {}
        for j, v in x.items():
            mu, bi = sys_.unknowns[j]
            out.setdefault(bi, {})[mu] = v
        return {bi: SparsePoly(spec.generator_names, t, spec.generator_weights)
                for bi, t in sorted(out.items())}

    def reconstruct(self, coeffs: dict[int, SparsePoly]) -> SparsePoly:
        """Substitute generator definitions back in: sum_m c_m(gens) * basis_m."""
        acc = self._ambient_one.zero()
        for bi, c in coeffs.items():
            for mu, v in c.terms.items():
                acc = acc + self._expand_gen_monomial(mu) * self.spec.basis[bi] * v
        return acc


def graded_module_reduce(f: SparsePoly, spec: GradedModuleSpec | GradedModule):
    module = spec if isinstance(spec, GradedModule) else GradedModule(spec)
    return module.reduce(f)
