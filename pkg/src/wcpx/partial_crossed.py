"""Twisted partial actions of a Hopf algebra and the crossed products they induce.

A twisted partial action is a pair of maps: an action phi: H (x) A -> A that
need not be unital on the acting side, and a cocycle omega: H (x) H -> A.
The pair induces a twisting map and a cocycle map on A (x) H; the partial
conditions on (phi, omega) translate one-for-one into the weak crossed
product conditions on the induced pair, and the crossed product lives on
the image of the induced projector.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import _elements as el
from .fields import FieldSpec
from .linmaps import (LinMap, ObjectShape, ShapeMismatchError, braiding,
                      equals, tensor)
from .reporting import Report, equality_record, predicate_record
from .structures import AlgebraData, HopfData, group_algebra, product_algebra
from .weak_crossed import (CrossedSystem, PreconditionError, WeakCrossedProduct,
                           algebra_checks, build_algebra, build_products,
                           check_normalized, check_preunit, cocycle_sides,
                           product_checks, twisted_sides)

Braid = Callable[[int, int], LinMap]


@dataclass(frozen=True)
class TwistedPartialAction:
    """Candidate twisted partial action data; validity is what the checks decide.

    ``braid_fn`` swaps a pluggable braiding in for the symmetric one; it
    takes the two factor dimensions and returns the braiding map.
    """

    hopf: HopfData
    algebra: AlgebraData
    phi: LinMap    # H (x) A -> A
    omega: LinMap  # H (x) H -> A
    braid_fn: Braid | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        h, a = self.hopf.dim, self.algebra.dim
        if self.phi.source.total != h * a or self.phi.target.total != a:
            raise ShapeMismatchError(f"phi must map H⊗A -> A, got {self.phi}")
        if self.omega.source.total != h * h or self.omega.target.total != a:
            raise ShapeMismatchError(f"omega must map H⊗H -> A, got {self.omega}")
        if self.hopf.field != self.algebra.field:
            raise ShapeMismatchError("hopf and algebra live over different fields")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def braid(self, m: int, n: int) -> LinMap:
        if self.braid_fn is not None:
            return self.braid_fn(m, n)
        return braiding(self.field, m, n)


def _maps(act: TwistedPartialAction):
    h, a = act.hopf, act.algebra
    idh, ida = h.algebra.id_map, a.id_map
    c_ha = act.braid(h.dim, a.dim)
    c_hh = act.braid(h.dim, h.dim)
    return h, a, idh, ida, c_ha, c_hh


def comul_square(hopf: HopfData, braid: LinMap) -> LinMap:
    """The coproduct of the tensor-square coalgebra on H (x) H."""
    idh = hopf.algebra.id_map
    return tensor(idh, braid, idh) @ tensor(hopf.comul, hopf.comul)


def induced_psi(act: TwistedPartialAction) -> LinMap:
    h, a, idh, ida, c_ha, _ = _maps(act)
    return tensor(act.phi, idh) @ tensor(idh, c_ha) @ tensor(h.comul, ida)


def induced_sigma(act: TwistedPartialAction) -> LinMap:
    h, _, _, _, _, c_hh = _maps(act)
    return tensor(act.omega, h.mul) @ comul_square(h, c_hh)


def lemma_report(act: TwistedPartialAction, subject: str = "") -> Report:
    """Identities tying the induced maps back to (phi, omega).

    These hold for arbitrary (phi, omega) as long as H really is a Hopf
    algebra, so a failure here points at corrupted structure constants.
    """
    h, a, idh, ida, c_ha, c_hh = _maps(act)
    psi, sigma = induced_psi(act), induced_sigma(act)
    eps = h.counit
    report = Report()
    report.add(equality_record(
        "partial.lemma_psi_comul",
        tensor(psi, idh) @ tensor(idh, c_ha) @ tensor(h.comul, ida),
        tensor(ida, h.comul) @ psi, subject))
    report.add(equality_record(
        "partial.lemma_sigma_comul",
        tensor(sigma, h.mul) @ comul_square(h, c_hh),
        tensor(ida, h.comul) @ sigma, subject))
    report.add(equality_record(
        "partial.lemma_psi_counit", tensor(ida, eps) @ psi, act.phi, subject))
    report.add(equality_record(
        "partial.lemma_sigma_counit", tensor(ida, eps) @ sigma, act.omega, subject))
    return report


def induce_psi_sigma(act: TwistedPartialAction) -> CrossedSystem:
    """Build the crossed system induced by (phi, omega).

    The recovery identities are re-verified first; the system constructor
    then enforces the compatibility condition, which holds exactly when
    the action is partially multiplicative.
    """
    bad = lemma_report(act).failures()
    if bad:
        raise PreconditionError(
            bad[0].check,
            f"recovery identity {bad[0].anchor!r} fails: Hopf data is corrupted")
    return CrossedSystem(act.algebra, act.hopf.dim, induced_psi(act), induced_sigma(act))


def _action_mult_sides(act: TwistedPartialAction, composite: bool):
    h, a, idh, ida, c_ha, _ = _maps(act)
    lhs = act.phi @ tensor(idh, a.mul)
    if composite:
        rhs = (a.mul @ tensor(act.phi, act.phi) @ tensor(idh, c_ha, ida)
               @ tensor(h.comul, ida, ida))
    else:
        rhs = a.mul @ tensor(ida, act.phi) @ tensor(induced_psi(act), ida)
    return lhs, rhs


def _twist_sides(act: TwistedPartialAction, composite: bool):
    h, a, idh, ida, c_ha, _ = _maps(act)
    psi, sigma = induced_psi(act), induced_sigma(act)
    if composite:
        lhs = (a.mul @ tensor(act.phi, act.omega) @ tensor(idh, c_ha, idh)
               @ tensor(h.comul, psi))
    else:
        lhs = a.mul @ tensor(ida, act.omega) @ tensor(psi, idh) @ tensor(idh, psi)
    rhs = a.mul @ tensor(ida, act.phi) @ tensor(sigma, ida)
    return lhs, rhs


def _absorb_sides(act: TwistedPartialAction, composite: bool):
    h, a, idh, ida, _, c_hh = _maps(act)
    if composite:
        sigma = tensor(act.omega, h.mul) @ comul_square(h, c_hh)
    else:
        sigma = induced_sigma(act)
    return act.omega, a.mul @ tensor(ida, act.phi) @ tensor(sigma, a.unit)


def check_partial_action(act: TwistedPartialAction, subject: str = "") -> Report:
    """The defining conditions, in the composite form and the induced-map form.

    Both forms of each condition are evaluated and their agreement is
    asserted as its own record, guarding the wiring of the induced maps.
    """
    h, a, idh, ida, _, _ = _maps(act)
    report = Report()
    report.add(equality_record("partial.identity",
                               act.phi @ tensor(h.unit, ida), ida, subject))
    for name, sides in (("mult", _action_mult_sides),
                        ("twist", _twist_sides),
                        ("cocycle_absorb", _absorb_sides)):
        composite = equality_record(f"partial.{name}_composite", *sides(act, True), subject=subject)
        rewritten = equality_record(f"partial.{name}", *sides(act, False), subject=subject)
        report.add(composite)
        report.add(rewritten)
        report.add(predicate_record(
            f"partial.{name}_forms_agree",
            composite.status == rewritten.status, subject=subject,
            note=f"composite {composite.status}, induced {rewritten.status}"))
    return report


def _cocycle_sides(act: TwistedPartialAction, composite: bool):
    h, a, idh, ida, c_ha, c_hh = _maps(act)
    if composite:
        sigma = tensor(act.omega, h.mul) @ comul_square(h, c_hh)
        lhs = (a.mul @ tensor(act.phi, act.omega) @ tensor(idh, c_ha, idh)
               @ tensor(h.comul, sigma))
        rhs = a.mul @ tensor(ida, act.omega) @ tensor(sigma, idh)
    else:
        psi, sigma = induced_psi(act), induced_sigma(act)
        lhs = a.mul @ tensor(ida, act.omega) @ tensor(psi, idh) @ tensor(idh, sigma)
        rhs = a.mul @ tensor(ida, act.omega) @ tensor(sigma, idh)
    return lhs, rhs


def check_units_and_cocycle(act: TwistedPartialAction, subject: str = "") -> Report:
    """Unit conditions on omega and the partial cocycle condition in both forms."""
    h, a, idh, ida, _, _ = _maps(act)
    unit_target = act.phi @ tensor(idh, a.unit)
    report = Report()
    report.add(equality_record("partial.unit_right",
                               act.omega @ tensor(idh, h.unit), unit_target, subject))
    report.add(equality_record("partial.unit_left",
                               act.omega @ tensor(h.unit, idh), unit_target, subject))
    composite = equality_record("partial.cocycle_composite",
                                *_cocycle_sides(act, True), subject=subject)
    rewritten = equality_record("partial.cocycle", *_cocycle_sides(act, False), subject=subject)
    report.add(composite)
    report.add(rewritten)
    report.add(predicate_record(
        "partial.cocycle_forms_agree",
        composite.status == rewritten.status, subject=subject,
        note=f"composite {composite.status}, induced {rewritten.status}"))
    return report


def partial_report(act: TwistedPartialAction, subject: str = "") -> Report:
    report = Report()
    report.extend(check_partial_action(act, subject))
    report.extend(check_units_and_cocycle(act, subject))
    report.extend(lemma_report(act, subject))
    return report


def nabla_unit_form(act: TwistedPartialAction) -> LinMap:
    """The projector written through omega; equals the induced projector
    whenever the unit conditions hold."""
    h, a, idh, ida, _, _ = _maps(act)
    return (tensor(a.mul @ tensor(ida, act.omega), idh)
            @ tensor(ida, h.unit, h.comul))


def sweedler_nabla(act: TwistedPartialAction) -> LinMap:
    """Elementwise oracle for the projector: a (x) h -> sum a(h1 . 1) (x) h2."""
    h, a = act.hopf, act.algebra
    field = act.field
    one_a = el.unit_vec(a.unit)
    values: dict[tuple[int, int], object] = {}
    for ai in range(a.dim):
        for hi in range(h.dim):
            col = ai * h.dim + hi
            for (h1, h2), c in el.expand_pairs(h.comul, hi):
                moved = el.apply_to_pair(act.phi, el.basis_vec(h1, field), one_a)
                prod = el.apply_to_pair(a.mul, el.basis_vec(ai, field), moved)
                for k, v in prod.items():
                    key = (k * h.dim + h2, col)
                    values[key] = values.get(key, field.zero()) + c * v
    sh = ObjectShape((a.dim, h.dim))
    return LinMap.from_dict(field, sh, sh, {k: v for k, v in values.items() if v})


def sweedler_product(act: TwistedPartialAction) -> LinMap:
    """Elementwise oracle for the crossed product on A (x) H:

        (a (x) h)(b (x) l) = sum a (h1 . b) omega(h2 (x) l1) (x) h3 l2
    """
    h, a = act.hopf, act.algebra
    field = act.field
    values: dict[tuple[int, int], object] = {}
    for ai in range(a.dim):
        for hi in range(h.dim):
            for bi in range(a.dim):
                for li in range(h.dim):
                    col = ((ai * h.dim + hi) * a.dim + bi) * h.dim + li
                    for (h1, h2, h3), ch in el.expand_triples(h.comul, hi):
                        for (l1, l2), cl in el.expand_pairs(h.comul, li):
                            acted = el.apply_to_pair(act.phi, el.basis_vec(h1, field),
                                                     el.basis_vec(bi, field))
                            twist = el.apply_to_pair(act.omega, el.basis_vec(h2, field),
                                                     el.basis_vec(l1, field))
                            left = el.apply_to_pair(a.mul, el.basis_vec(ai, field), acted)
                            left = el.apply_to_pair(a.mul, left, twist)
                            tail = el.apply_to_pair(h.mul, el.basis_vec(h3, field),
                                                    el.basis_vec(l2, field))
                            for k, va in left.items():
                                for m, vh in tail.items():
                                    key = (k * h.dim + m, col)
                                    prev = values.get(key, field.zero())
                                    values[key] = prev + ch * cl * va * vh
    source = ObjectShape((a.dim, h.dim, a.dim, h.dim))
    target = ObjectShape((a.dim, h.dim))
    return LinMap.from_dict(field, source, target, {k: v for k, v in values.items() if v})


def partial_pipeline(act: TwistedPartialAction,
                     subject: str = "") -> tuple[Report, WeakCrossedProduct | None]:
    """All §-level checks plus, when they pass, the built crossed product."""
    report = partial_report(act, subject)
    if not report.passed:
        return report, None
    system = induce_psi_sigma(act)
    report.extend(check_normalized(system, subject))
    if not report.passed:
        return report, None
    product = build_products(system)
    report.extend(product_checks(product, subject))
    report.add(equality_record("partial.nabla_unit_form",
                               product.nabla, nabla_unit_form(act), subject))
    report.add(equality_record("partial.product_oracle",
                               product.mu_tensor, sweedler_product(act), subject))
    nu = tensor(act.algebra.unit, act.hopf.unit)
    report.extend(check_preunit(product, nu, subject))
    if not report.passed:
        return report, None
    product = build_algebra(product, nu)
    report.extend(algebra_checks(product, subject))
    report.facts["nabla_rank"] = product.splitting.mid.total
    report.facts["product_dim"] = product.dim
    return report, product


def build_partial_crossed_product(act: TwistedPartialAction) -> WeakCrossedProduct:
    report, product = partial_pipeline(act)
    if product is None:
        bad = report.failures()[0]
        raise PreconditionError(bad.check, f"partial action check failed: {bad.anchor}")
    return product


def theorem_equivalence_suite(act: TwistedPartialAction, subject: str = "") -> Report:
    """Status equality between the partial conditions and the quadruple conditions.

    The partial twisted condition must hold exactly when the induced pair
    satisfies the twisted condition, and likewise for the cocycle
    condition; both directions are asserted as one status comparison per
    theorem, on valid and on broken inputs alike.
    """
    action_report = check_partial_action(act)
    cocycle_report = check_units_and_cocycle(act)
    psi, sigma = induced_psi(act), induced_sigma(act)
    t_lhs, t_rhs = twisted_sides(act.algebra, psi, sigma, act.hopf.dim)
    c_lhs, c_rhs = cocycle_sides(act.algebra, psi, sigma, act.hopf.dim)
    eq_twisted = equals(t_lhs, t_rhs)
    eq_cocycle = equals(c_lhs, c_rhs)
    partial_twist = action_report["partial.twist"].passed
    partial_cocycle = cocycle_report["partial.cocycle"].passed
    report = Report()
    report.add(predicate_record(
        "partial.thm_twisted_equiv", partial_twist == eq_twisted, subject=subject,
        note=f"partial side {'pass' if partial_twist else 'fail'}, "
             f"quadruple side {'pass' if eq_twisted else 'fail'}"))
    report.add(predicate_record(
        "partial.thm_cocycle_equiv", partial_cocycle == eq_cocycle, subject=subject,
        note=f"partial side {'pass' if partial_cocycle else 'fail'}, "
             f"quadruple side {'pass' if eq_cocycle else 'fail'}"))
    return report


# ---------------------------------------------------------------------------
# canonical fixtures

def smash_omega(hopf: HopfData, algebra: AlgebraData, phi: LinMap) -> LinMap:
    """The cocycle omega(h (x) l) = phi(h (x) phi(l (x) 1)) of a smash-style action."""
    idh = hopf.algebra.id_map
    return phi @ tensor(idh, phi @ tensor(idh, algebra.unit))


def global_action(field: FieldSpec) -> TwistedPartialAction:
    """The trivial global action of the order-2 group algebra on itself."""
    hopf = group_algebra(2, field)
    alg = group_algebra(2, field).algebra
    phi = tensor(hopf.counit, alg.id_map)
    omega = alg.unit @ tensor(hopf.counit, hopf.counit)
    return TwistedPartialAction(hopf, alg, phi, omega)


def lambda_zero_action(field: FieldSpec) -> TwistedPartialAction:
    """The rank-one partial action on the base field killing the group generator."""
    hopf = group_algebra(2, field)
    alg = product_algebra(1, field)
    one = field.one()
    phi = LinMap.from_dict(field, ObjectShape((2, 1)), ObjectShape((1,)), {(0, 0): one})
    omega = LinMap.from_dict(field, ObjectShape((2, 2)), ObjectShape((1,)), {(0, 0): one})
    return TwistedPartialAction(hopf, alg, phi, omega)


def partial_smash_action(field: FieldSpec) -> TwistedPartialAction:
    """The order-2 group algebra acting partially on the split plane k x k.

    The generator fixes e1 and kills e2; the cocycle is the smash-style
    one, omega(h (x) l) = h.(l.1).
    """
    hopf = group_algebra(2, field)
    alg = product_algebra(2, field)
    one = field.one()
    phi = LinMap.from_dict(field, ObjectShape((2, 2)), ObjectShape((2,)),
                           {(0, 0): one, (1, 1): one, (0, 2): one})
    omega = smash_omega(hopf, alg, phi)
    return TwistedPartialAction(hopf, alg, phi, omega)
