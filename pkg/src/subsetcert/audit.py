"""Recompute the published counterexample and diff it against stated values.

Every recomputed number comes from a live call into the counting and
protocol modules.  Stated values are fixed constants tagged with the
formula fragment they were read from.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .arith import eval_sparse_poly, modpow, nonneg_mod
from .counting import (AS_WRITTEN, CORRECTED, Instance, multiset_partition_counts,
                       set_recurrence_table, subset_count_table)
from .errors import PreconditionError
from .primes import Surd, pick_p, pick_q
from .protocol import (Certificate, VerifierParams, compressed_row, prove, verify)

EXAMPLE_WEIGHTS = (1, 2, 3, 4)
EXAMPLE_TARGET = 17
EXAMPLE_Q = 277
EXAMPLE_R = 7


@dataclass(frozen=True)
class Stated:
    value: Any
    anchor: str


STATED: Dict[str, Stated] = {
    "n": Stated(4, "n=4"),
    "nt": Stated(68, "nt=68"),
    "2sqrt(nt)": Stated("16.492", "2\\sqrt{68} \\approx 16.492"),
    "p": Stated(17, "p=17"),
    "c_17": Stated(0, "c_{17}=0"),
    "c_34": Stated(0, "c_{34}=0"),
    "c_51": Stated(0, "c_{51}=0"),
    "c_68": Stated(0, "c_{68}=0"),
    "certificate_indices": Stated([17, 34, 51, 68], "p=17, c_{17}=0, c_{34}=0, c_{51}=0, c_{68}=0"),
    "q": Stated(277, "q=277"),
    "r": Stated(7, "r=7"),
    "sum_c_r": Stated(7, "\\sum_i c_i r^i = 7"),
    "t_mod_p_chain": Stated("20%19=1", "T'[4, 20\\% 19]=T'[4, 1]"),
    "chain_modulus": Stated(331, "\\% 331"),
    "forced_seed": Stated(0, "T'[0, 0]=0"),
}


@dataclass(frozen=True)
class Discrepancy:
    id: str
    description: str
    anchor: str
    stated_value: Any
    recomputed_value: Any
    policy: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class AuditReport:
    instance: Instance
    stated: Dict[str, Stated]
    recomputed: Dict[str, Dict[str, Any]]
    agreements: List[str]
    discrepancies: List[Discrepancy]
    verdicts: Dict[str, dict]

    def discrepancy(self, did: str) -> Discrepancy:
        return next(d for d in self.discrepancies if d.id == did)

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "stated": {k: {"value": v.value, "anchor": v.anchor} for k, v in self.stated.items()},
            "recomputed": self.recomputed,
            "agreements": self.agreements,
            "discrepancies": [d.to_dict() for d in self.discrepancies],
            "verdicts": self.verdicts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = [f"instance weights={list(self.instance.weights)} t={self.instance.t}"]
        for name in self.agreements:
            s = self.stated[name]
            lines.append(f"AGREE {name} | {s.anchor} | stated={s.value}")
        for d in self.discrepancies:
            lines.append(f"{d.id} | {d.anchor} | stated={_compact(d.stated_value)} | "
                         f"recomputed={_compact(d.recomputed_value)} | policy={d.policy}")
        for policy, v in self.verdicts.items():
            lines.append(f"VERDICT {policy} | {v['outcome']} c_t={v['c_t']} "
                         f"lhs={v['lhs']} rhs={v['rhs']}")
        return "\n".join(lines)


def _compact(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _recompute(inst: Instance, policy) -> Dict[str, Any]:
    cert = prove(inst, policy)
    row = compressed_row(inst, cert.p, EXAMPLE_R, EXAMPLE_Q, policy)
    verdict = verify(inst, cert, VerifierParams(EXAMPLE_Q, EXAMPLE_R), policy)
    table = subset_count_table(inst, policy)
    return {
        "p": cert.p,
        "t_mod_p": nonneg_mod(inst.t, cert.p),
        "certificate": [[i, c] for i, c in cert.entries],
        "certificate_indices": list(cert.indices),
        "counts": table.tolist(),
        "fingerprint_row": [int(x) for x in row],
        "sum_c_r": eval_sparse_poly(cert.entries, EXAMPLE_R, EXAMPLE_Q),
        "rhs": verdict.rhs,
        "verdict": verdict.to_dict(),
    }


def audit_example1() -> AuditReport:
    """Run the four-item counterexample under both profiles with q=277, r=7."""
    inst = Instance(EXAMPLE_WEIGHTS, EXAMPLE_TARGET)
    p_pick = pick_p(inst.n, inst.t)
    q_pick = pick_q(inst.n, inst.t, "smallest")
    lower = Surd(2, inst.nt)
    shared = {
        "n": inst.n,
        "nt": inst.nt,
        "2sqrt(nt)": f"{float(lower):.3f}",
        "p": p_pick.prime,
        "q": q_pick.prime,
        "r": EXAMPLE_R,
        "t_mod_p": f"{inst.t}%{p_pick.prime}={nonneg_mod(inst.t, p_pick.prime)}",
        "seed_T'[0,0]": 1,
        "r^4 mod 331": modpow(EXAMPLE_R, 4, 331),
    }
    stated_cert = Certificate(STATED["p"].value, inst.t,
                              tuple((i, 0) for i in STATED["certificate_indices"].value))
    shared["sum_c_r_stated_certificate"] = eval_sparse_poly(stated_cert.entries, EXAMPLE_R, EXAMPLE_Q)

    per_policy = {"corrected": _recompute(inst, CORRECTED),
                  "aswritten": _recompute(inst, AS_WRITTEN)}
    recomputed = {"shared": shared, **per_policy}
    corr, asw = per_policy["corrected"], per_policy["aswritten"]

    agreements = [name for name in ("n", "nt", "2sqrt(nt)", "p", "q", "r")
                  if shared[name] == STATED[name].value]
    for i in (17, 34, 51, 68):
        key = f"c_{i}"
        if all(pp["counts"][i] == STATED[key].value for pp in per_policy.values()):
            agreements.append(key)

    discrepancies = []

    def flag(did, description, name, recomputed_value, policy):
        s = STATED[name]
        if s.value != recomputed_value:
            discrepancies.append(Discrepancy(did, description, s.anchor, s.value,
                                             recomputed_value, policy))

    flag("D1", f"residue index uses modulus 19 although p={shared['p']}",
         "t_mod_p_chain", shared["t_mod_p"], "all")
    flag("D2", "fingerprint of the certificate at r=7 mod 277",
         "sum_c_r", {"stated_certificate": shared["sum_c_r_stated_certificate"],
                     "corrected": corr["sum_c_r"], "aswritten": asw["sum_c_r"]}, "all")
    flag("D3", "certificate index set {i <= nt : i = t mod p}",
         "certificate_indices", corr["certificate_indices"], "all")
    flag("D4", "seed T'[0,0] needed for lhs = rhs",
         "forced_seed", {"T'[0,0]": shared["seed_T'[0,0]"], "outcome": corr["verdict"]["outcome"],
                         "c_t": corr["verdict"]["c_t"], "lhs": corr["sum_c_r"],
                         "rhs": corr["rhs"]}, "corrected")
    flag("D5", f"reduction modulus differs from q={shared['q']}",
         "chain_modulus", shared["q"], "all")

    verdicts = {name: pp["verdict"] for name, pp in per_policy.items()}
    return AuditReport(inst, dict(STATED), recomputed, agreements, discrepancies, verdicts)


@dataclass
class RecurrenceIdentityReport:
    seed: int
    trials: int
    matches: int = 0
    mismatches: List[dict] = field(default_factory=list)
    divergent_trials: int = 0
    witnesses: List[dict] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return self.matches == self.trials

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def render_text(self) -> str:
        lines = [f"seed={self.seed} trials={self.trials} matches={self.matches}/{self.trials}",
                 f"multiset-vs-subset divergent trials={self.divergent_trials}"]
        for m in self.mismatches:
            lines.append(f"MISMATCH {_compact(m)}")
        for w in self.witnesses:
            lines.append(f"WITNESS members={w['members']} i={w['i']} "
                         f"multiset={w['multiset']} subset={w['subset']}")
        return "\n".join(lines)


def _witness(weights, upper, at=None) -> Tuple[dict, bool]:
    subset = subset_count_table(Instance(weights, max(1, upper)), CORRECTED, upper=upper)
    multi = multiset_partition_counts(weights, upper)
    i = subset.first_difference(multi) if at is None else at
    if i is None or subset[i] == multi[i]:
        return {}, False
    return {"members": sorted(weights), "i": i, "multiset": multi[i], "subset": subset[i]}, True


def audit_recurrence_identity(seed: int = 0, trials: int = 500,
                              max_witnesses: int = 10) -> RecurrenceIdentityReport:
    """Compare the bottom-up kernel with the top-down prefix-set recurrence.

    Random instances have distinct weights, ``n <= 10`` and ``w_i <= t <= 30``.
    Also records where unbounded-repetition partition counts part ways
    with subset counts, always including members ``{1, 2}`` at ``i = 3``.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    rng = random.Random(seed)
    report = RecurrenceIdentityReport(seed, trials)
    canonical, _ = _witness((1, 2), 3, at=3)
    report.witnesses.append(canonical)
    for k in range(trials):
        t = rng.randint(1, 30)
        n = rng.randint(1, min(10, t))
        weights = tuple(rng.sample(range(1, t + 1), n))
        inst = Instance(weights, t)
        bottom_up = subset_count_table(inst, CORRECTED)
        top_down = set_recurrence_table(weights, inst.nt)
        if bottom_up == top_down:
            report.matches += 1
        else:
            report.mismatches.append({"trial": k, "weights": list(weights), "t": t,
                                      "first_difference": bottom_up.first_difference(top_down)})
        w, diverged = _witness(weights, inst.nt)
        if diverged:
            report.divergent_trials += 1
            if len(report.witnesses) < max_witnesses:
                report.witnesses.append({"trial": k, **w})
    return report
