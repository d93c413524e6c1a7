"""Claim registry: each structural proposition bound to an executable check.

Claims are *checked*, never trusted: the ones with known failure modes (the
product comparison, the trivial collapse) report ``fails`` with a replayable
witness instead of aborting, while trusted invariants (the axioms, the
equivalence-relation property of the enveloping relation) abort construction
as internal errors long before a claim runs.
"""
from __future__ import annotations

import time
from typing import Callable

from .algebra import Subgroup, all_subgroups
from .bounds import DEFAULT_BOUNDS, Bounds
from .envelope import (EnvelopeResult, adjunction_maps, envelope_of_map,
                       fixed_decomposition, globalize, iterated_twist_comparison,
                       product_comparison, recognize_globalization,
                       trivial_collapse, twisted_product)
from .errors import BoundExceeded, ValidationError
from .finspace import (SpaceMap, discrete_space, is_closed, is_continuous,
                       is_open, is_open_map, is_T1, pair_label,
                       space_from_min_opens, split_pair_label, subspace)
from .homotopy import (check_G_contractibility_theorem, enumerate_maps,
                       is_locally_G_contractible)
from .instance import Instance
from .paction import (PartialAction, diagonal_product, is_isovariant,
                      trivial_action, validate_partial_action)
from .report import (FAILS, HOLDS, PRECONDITION_UNMET, SKIPPED_BOUNDS,
                     ClaimReport)

Check = Callable[[Instance, Bounds], tuple[str, dict]]


def _restrict_action_to_k(env: EnvelopeResult, pa: PartialAction) -> PartialAction:
    """The enveloping action restricted to K, keyed by K's own group object."""
    pts = list(env.total.points)
    domains = {k: pts for k in pa.group.elements}
    thetas = {k: dict(env.action[k]) for k in pa.group.elements}
    return validate_partial_action(pa.group, env.total, domains, thetas)


def _embedding_checks(env: EnvelopeResult) -> dict[str, bool]:
    emb = env.embedding
    image = env.embedding_image()
    onto = SpaceMap(env.base.space, subspace(env.total, image), emb.assignment)
    return {
        "injective": len(set(emb.assignment)) == len(env.base.space),
        "continuous": is_continuous(emb),
        "open-onto-image": is_open_map(onto),
        "image-open": is_open(env.total, image),
        "homeomorphism-onto-image": (onto.is_bijective() and is_continuous(onto)
                                     and is_continuous(onto.inverse())),
    }


def _claim_pa_axioms(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.pa
    validate_partial_action(pa.group, pa.space, pa.domains, pa.thetas)
    witness = {
        "elements": len(pa.group),
        "points": len(pa.space),
        "triples_scanned": len(pa.group) ** 2 * len(pa.space),
        "gstar_open": pa.gstar_is_open(),
        "gstar_closed": pa.gstar_is_closed(),
    }
    return HOLDS, witness


def _claim_embedding(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    env = globalize(inst.embedded_pa, bounds.envelope_pairs)
    checks = _embedding_checks(env)
    status = HOLDS if all(checks.values()) else FAILS
    witness = {"checks": checks, "classes": len(env.total)}
    if status == FAILS:
        witness["reason"] = next(k for k, v in checks.items() if not v)
    return status, witness


def _claim_recognition(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env = globalize(pa, bounds.envelope_pairs)
    beta = env.as_global_action()
    phi, report = recognize_globalization(beta, env.embedding_image(),
                                          bounds.envelope_pairs)
    witness = {k: v for k, v in report.items() if k != "status"}
    if phi is not None and report["status"] == HOLDS:
        witness["map"] = phi.as_dict()
    return report["status"], witness


def _claim_twist_eq_glob(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env_g = globalize(pa, bounds.envelope_pairs)
    env_t = twisted_product(pa, pa.group, bounds.envelope_pairs)
    checks = {
        "same-class-partition": env_g.classes == env_t.classes,
        "same-projection": env_g.projection.assignment == env_t.projection.assignment,
        "same-action": {g: dict(t) for g, t in env_g.action.items()}
                       == {g: dict(t) for g, t in env_t.action.items()},
    }
    status = HOLDS if all(checks.values()) else FAILS
    witness = {"checks": checks, "classes": len(env_g.total),
               "twisted_classes": len(env_t.total)}
    if status == FAILS:
        witness["reason"] = next(k for k, v in checks.items() if not v)
    return status, witness


def _claim_iota_k(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env = twisted_product(pa, inst.big, bounds.envelope_pairs)
    emb = env.embedding
    image = env.embedding_image()
    res_k = _restrict_action_to_k(env, pa)
    onto = SpaceMap(pa.space, subspace(env.total, image), emb.assignment)
    kstar_open = is_open(env.product_space, env.kstar)
    kstar_closed = is_closed(env.product_space, env.kstar)
    checks = {
        "injective": len(set(emb.assignment)) == len(pa.space),
        "k-isovariant": is_isovariant(emb, pa, res_k),
        "homeomorphism-onto-image": (onto.is_bijective() and is_continuous(onto)
                                     and is_continuous(onto.inverse())),
        "image-open-iff-kstar-open": is_open(env.total, image) == kstar_open,
        "image-closed-iff-kstar-closed": is_closed(env.total, image) == kstar_closed,
    }
    status = HOLDS if all(checks.values()) else FAILS
    witness = {"checks": checks, "kstar_open": kstar_open,
               "kstar_closed": kstar_closed, "classes": len(env.total)}
    if status == FAILS:
        witness["reason"] = next(k for k, v in checks.items() if not v)
    return status, witness


def _claim_preimage(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env = twisted_product(pa, inst.big, bounds.envelope_pairs)
    image = env.embedding_image()
    preimage = frozenset(p for p in env.product_space.points
                         if env.projection(p) in image)
    holds = preimage == env.kstar
    order = env.product_space.index
    witness = {"kstar": sorted(env.kstar, key=order), "classes": len(env.total)}
    if not holds:
        witness["reason"] = "preimage of the embedded image differs from K*X"
        witness["difference"] = sorted(preimage ^ env.kstar, key=order)
    return (HOLDS if holds else FAILS), witness


def _claim_iterated_twist(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    _, _, report = iterated_twist_comparison(pa, inst.big, bounds.envelope_pairs)
    witness = {k: v for k, v in report.items() if k != "status"}
    if report["status"] == FAILS:
        witness["reason"] = next(k for k, v in report["checks"].items() if not v)
    return report["status"], witness


def _claim_adjunction(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    big = inst.big
    if len(big) > bounds.hom_group or len(pa.space) > bounds.hom_space:
        return SKIPPED_BOUNDS, {"reason": "instance exceeds the hom-set bounds"}
    candidates: list[tuple[str, PartialAction]] = [
        ("pt", trivial_action(big, discrete_space(["y"])))]
    env = twisted_product(pa, big, bounds.envelope_pairs)
    if len(env.total) <= bounds.hom_space:
        candidates.append(("envelope", env.as_global_action()))
    ran = {}
    ok = True
    for name, pa_y in candidates:
        result = adjunction_maps(pa, pa_y, big,
                                 max_space=bounds.hom_space,
                                 max_group=bounds.hom_group,
                                 node_budget=bounds.map_nodes)
        ran[name] = {"g_maps": result.report["g_maps"],
                     "k_maps": result.report["k_maps"],
                     "status": result.report["status"]}
        ok = ok and result.report["status"] == HOLDS
    witness = {"targets": ran}
    if not ok:
        witness["reason"] = "adjunction bijection or naturality failed"
    return (HOLDS if ok else FAILS), witness


def split_diagonal_factors(pa: PartialAction
                           ) -> tuple[PartialAction, PartialAction] | None:
    """Recover the two factors of a diagonal-product action from the pair
    labels, or None when the instance does not carry a product structure."""
    pts = pa.space.points
    split = [split_pair_label(p) for p in pts]
    if any(s is None for s in split):
        return None
    firsts: list[str] = []
    seconds: list[str] = []
    for a, b in split:  # type: ignore[misc]
        if a not in firsts:
            firsts.append(a)
        if b not in seconds:
            seconds.append(b)
    if len(pts) != len(firsts) * len(seconds):
        return None
    if {pair_label(a, b) for a in firsts for b in seconds} != set(pts):
        return None

    def u1(p: str) -> set[str]:
        return {p2 for p2 in firsts
                if all(pa.space.leq(pair_label(p2, q), pair_label(p, q))
                       for q in seconds)}

    def u2(q: str) -> set[str]:
        return {q2 for q2 in seconds
                if all(pa.space.leq(pair_label(p, q2), pair_label(p, q))
                       for p in firsts)}

    opens_1 = {p: u1(p) for p in firsts}
    opens_2 = {q: u2(q) for q in seconds}
    for a, b in split:  # type: ignore[misc]
        expected = {pair_label(p, q) for p in opens_1[a] for q in opens_2[b]}
        if expected != set(pa.space.min_open_of(pair_label(a, b))):
            return None
    try:
        space_1 = space_from_min_opens(firsts, opens_1)
        space_2 = space_from_min_opens(seconds, opens_2)
    except ValidationError:
        return None

    domains_1: dict[str, set[str]] = {}
    domains_2: dict[str, set[str]] = {}
    for g in pa.group.elements:
        domains_1[g] = {a for a, _ in (split_pair_label(p) for p in pa.domains[g])}
        domains_2[g] = {b for _, b in (split_pair_label(p) for p in pa.domains[g])}
        if {pair_label(a, b) for a in domains_1[g] for b in domains_2[g]} != set(pa.domains[g]):
            return None
    thetas_1: dict[str, dict[str, str]] = {}
    thetas_2: dict[str, dict[str, str]] = {}
    for g in pa.group.elements:
        t1: dict[str, str] = {}
        t2: dict[str, str] = {}
        for p in pa.domains[pa.group.inv(g)]:
            a, b = split_pair_label(p)  # type: ignore[misc]
            ia, ib = split_pair_label(pa.thetas[g][p])  # type: ignore[misc]
            if t1.setdefault(a, ia) != ia or t2.setdefault(b, ib) != ib:
                return None
        thetas_1[g] = t1
        thetas_2[g] = t2
    try:
        pa_1 = validate_partial_action(pa.group, space_1, domains_1, thetas_1)
        pa_2 = validate_partial_action(pa.group, space_2, domains_2, thetas_2)
        diag, _ = diagonal_product([pa_1, pa_2], max_points=len(pts))
    except ValidationError:
        return None
    same = (set(diag.space.points) == set(pts)
            and all(diag.space.min_open_of(p) == pa.space.min_open_of(p) for p in pts)
            and all(diag.domains[g] == pa.domains[g] for g in pa.group.elements)
            and all(dict(diag.thetas[g]) == dict(pa.thetas[g]) for g in pa.group.elements))
    if not same:
        return None
    return pa_1, pa_2


def _claim_product_comparison(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    factors = split_diagonal_factors(inst.embedded_pa)
    if factors is None:
        return PRECONDITION_UNMET, {"reason": "needs two factors: the instance is "
                                              "not a diagonal product"}
    _, report = product_comparison(factors[0], factors[1], inst.big,
                                   max_pairs=bounds.envelope_pairs,
                                   max_points=bounds.product_points)
    witness = {k: v for k, v in report.items() if k != "status"}
    return report["status"], witness


def _claim_trivial_collapse(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    if not pa.is_trivial():
        return PRECONDITION_UNMET, {"reason": "the action is not trivial"}
    if not pa.is_global():
        return PRECONDITION_UNMET, {"reason": "the trivial action does not have "
                                              "full domains"}
    _, report = trivial_collapse(pa, inst.big, bounds.envelope_pairs)
    witness = {k: v for k, v in report.items() if k != "status"}
    return report["status"], witness


def _claim_t1(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    if not is_T1(pa.space):
        return PRECONDITION_UNMET, {"reason": "the base space is not T1"}
    env = twisted_product(pa, inst.big, bounds.envelope_pairs)
    t1 = is_T1(env.total)
    witness = {"classes": len(env.total)}
    if not t1:
        bad = next(c for c in env.total.points if not is_closed(env.total, {c}))
        witness["reason"] = "a singleton class is not closed"
        witness["non_closed_singleton"] = bad
    return (HOLDS if t1 else FAILS), witness


def _claim_homotopy_preservation(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    poset_x = enumerate_maps(pa.space, pa.space, equivariant=(pa, pa),
                             node_budget=bounds.map_nodes, max_maps=bounds.max_maps)
    env = globalize(pa, bounds.envelope_pairs)
    gpa = env.as_global_action()
    poset_y = enumerate_maps(env.total, env.total, equivariant=(gpa, gpa),
                             node_budget=bounds.map_nodes, max_maps=bounds.max_maps)
    lifted = [poset_y.index_of(envelope_of_map(f, pa, pa, env_x=env, env_y=env))
              for f in poset_x.maps]
    comp_x = poset_x.components
    comp_y = poset_y.components
    bad = None
    for i in range(len(poset_x.maps)):
        for j in range(i + 1, len(poset_x.maps)):
            if comp_x[i] == comp_x[j] and comp_y[lifted[i]] != comp_y[lifted[j]]:
                bad = (i, j)
                break
        if bad:
            break
    witness = {
        "g_maps": len(poset_x.maps),
        "components": len(set(comp_x)),
        "envelope_g_maps": len(poset_y.maps),
    }
    if bad:
        witness["reason"] = "a homotopic pair has non-homotopic envelopes"
        witness["pair"] = [poset_x.maps[bad[0]].as_dict(),
                           poset_x.maps[bad[1]].as_dict()]
    return (FAILS if bad else HOLDS), witness


def _claim_g_contractible(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    report = check_G_contractibility_theorem(inst.embedded_pa, inst.id,
                                             node_budget=bounds.map_nodes,
                                             max_maps=bounds.max_maps,
                                             max_pairs=bounds.envelope_pairs)
    return report.status, report.witness


def _claim_locally_g_contractible(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    base = is_locally_G_contractible(pa, max_points=bounds.local_points,
                                     node_budget=bounds.map_nodes,
                                     max_maps=bounds.max_maps)
    env = globalize(pa, bounds.envelope_pairs)
    lifted = is_locally_G_contractible(env.as_global_action(),
                                       max_points=bounds.local_points,
                                       node_budget=bounds.map_nodes,
                                       max_maps=bounds.max_maps)
    holds = base == lifted
    witness = {"space": base, "envelope": lifted}
    if not holds:
        witness["reason"] = "local equivariant contractibility differs across "\
                            "the embedding"
    return (HOLDS if holds else FAILS), witness


def _claim_fixed_decomposition(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env = globalize(pa, bounds.envelope_pairs)
    reports = []
    ok = True
    for sub in all_subgroups(pa.group, bounds.group_order):
        rep = fixed_decomposition(pa, sub, env=env)
        good = rep["decomposition"]["holds"] and rep["embedded_fixed"]["holds"]
        ok = ok and good
        reports.append({"subgroup": rep["subgroup"],
                        "decomposition": rep["decomposition"]["holds"],
                        "embedded_fixed": rep["embedded_fixed"]["holds"],
                        "fixed_in_total": rep["decomposition"]["fixed_in_total"]})
    witness = {"subgroups": reports, "classes": len(env.total)}
    if not ok:
        witness["reason"] = "a fixed-point identity fails"
    return (HOLDS if ok else FAILS), witness


def _claim_generated_intersection(inst: Instance, bounds: Bounds) -> tuple[str, dict]:
    pa = inst.embedded_pa
    env = globalize(pa, bounds.envelope_pairs)
    trivial = Subgroup(pa.group, frozenset({pa.group.identity}))
    rep = fixed_decomposition(pa, trivial, env=env)
    inner = rep["generated_intersection"]
    witness = {"families_checked": inner["families_checked"]}
    if not inner["holds"]:
        witness["reason"] = "an intersection differs from the generated fixed set"
        witness["family"] = inner["witness"]
    return (HOLDS if inner["holds"] else FAILS), witness


CLAIMS: dict[str, Check] = {
    "pa-axioms": _claim_pa_axioms,
    "embedding": _claim_embedding,
    "recognition": _claim_recognition,
    "twist-eq-glob": _claim_twist_eq_glob,
    "iota-k": _claim_iota_k,
    "preimage": _claim_preimage,
    "iterated-twist": _claim_iterated_twist,
    "adjunction": _claim_adjunction,
    "product-comparison": _claim_product_comparison,
    "trivial-collapse": _claim_trivial_collapse,
    "t1": _claim_t1,
    "homotopy-preservation": _claim_homotopy_preservation,
    "g-contractible": _claim_g_contractible,
    "locally-g-contractible": _claim_locally_g_contractible,
    "fixed-decomposition": _claim_fixed_decomposition,
    "generated-intersection": _claim_generated_intersection,
}


def claim_ids() -> list[str]:
    return list(CLAIMS)


def run_claim(claim_id: str, instance: Instance,
              bounds: Bounds = DEFAULT_BOUNDS) -> ClaimReport:
    """Run one registered claim; bound overruns become skipped-bounds."""
    if claim_id not in CLAIMS:
        raise ValidationError("unknown-claim", (claim_id,),
                              f"no claim registered under {claim_id!r}")
    start = time.perf_counter()
    try:
        status, witness = CLAIMS[claim_id](instance, bounds)
    except BoundExceeded as exc:
        status, witness = SKIPPED_BOUNDS, {"reason": str(exc)}
    return ClaimReport(claim_id, instance.id, status, witness,
                       time.perf_counter() - start)


def run_all(instance: Instance, bounds: Bounds = DEFAULT_BOUNDS) -> list[ClaimReport]:
    """Every registered claim, in registry order."""
    return [run_claim(cid, instance, bounds) for cid in CLAIMS]


def worst_status(reports: list[ClaimReport]) -> str:
    order = {FAILS: 3, SKIPPED_BOUNDS: 2, PRECONDITION_UNMET: 1, HOLDS: 0}
    worst = HOLDS
    for rep in reports:
        if order[rep.status] > order[worst]:
            worst = rep.status
    return worst


def exit_code(reports: list[ClaimReport]) -> int:
    """1 when at least one claim fails, else 0."""
    return 1 if any(rep.status == FAILS for rep in reports) else 0


def replay_witness(report: ClaimReport, instance: Instance,
                   bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """Re-validate a report's witness without re-running the search.

    Failing claims with constructive witnesses (product comparison, trivial
    collapse, T1) are re-checked directly against the instance; reports that
    hold (or were skipped) replay vacuously.  Other failing claims are
    re-run and compared by status.
    """
    if report.instance_id != instance.id:
        raise ValidationError("instance-mismatch", (report.instance_id, instance.id),
                              "report refers to a different instance")
    if report.status in (HOLDS, PRECONDITION_UNMET, SKIPPED_BOUNDS):
        return True
    cid = report.claim_id
    w = report.witness
    if cid == "product-comparison":
        factors = split_diagonal_factors(instance.embedded_pa)
        if factors is None:
            return False
        _, rep = product_comparison(factors[0], factors[1], instance.big,
                                    max_pairs=bounds.envelope_pairs,
                                    max_points=bounds.product_points)
        hit = set(rep["map"].values())
        unhit = w.get("unhit_targets", [])
        if any(t in hit for t in unhit):
            return False
        if "map" in w and w["map"] != rep["map"]:
            return False
        if "source_classes" in w and w["source_classes"] != rep["source_classes"]:
            return False
        if "target_points" in w and w["target_points"] != rep["target_points"]:
            return False
        collision = w.get("collision")
        if collision is not None:
            if len(collision) < 2 or collision[0] == collision[1]:
                return False
            if rep["map"].get(collision[0]) != rep["map"].get(collision[1]):
                return False
        return bool(unhit or collision is not None)
    if cid == "trivial-collapse":
        pa = instance.embedded_pa
        if not (pa.is_trivial() and pa.is_global()):
            return False
        delta, rep = trivial_collapse(pa, instance.big, bounds.envelope_pairs)
        collision = w.get("collision")
        if collision is not None:
            if len(collision) < 2 or collision[0] == collision[1]:
                return False
            if delta(collision[0]) != delta(collision[1]):
                return False
            if "collision_value" in w and delta(collision[0]) != w["collision_value"]:
                return False
            return True
        return rep["status"] == report.status
    if cid == "t1":
        pa = instance.embedded_pa
        if not is_T1(pa.space):
            return False
        env = twisted_product(pa, instance.big, bounds.envelope_pairs)
        bad = w.get("non_closed_singleton")
        return bad is not None and bad in env.total and \
            not is_closed(env.total, {bad})
    rerun = run_claim(cid, instance, bounds)
    return rerun.status == report.status
