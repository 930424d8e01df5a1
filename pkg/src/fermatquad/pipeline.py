"""Per-field composition: field data, level table, irreducibility evidence,
elimination table and verdict, rendered as JSON or text."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classgroup import class_group, h_set, narrow_class_group
from .eliminate import Verdict, verdict
from .freylevel import (SCENARIO_DIVIDES, cokernel_classes, distinct_levels, dyadic_primes,
                        level_string, predict_levels)
from .irred import IrredReport, irreducibility_report
from .quadfield import FieldCtx, make_field, totally_positive_unit_generator


def field_info(F: FieldCtx) -> dict:
    cg = class_group(F)
    eps = F.fundamental_unit
    return {
        "d": F.d,
        "discriminant": F.disc,
        "omega": str(F.omega),
        "fundamental_unit": str(eps),
        "unit_norm": eps.norm(),
        "totally_positive_unit": str(totally_positive_unit_generator(F)),
        "class_group": cg.group.structure(),
        "class_group_generators": [str(I) for I in cg.generator_ideals],
        "narrow_class_group": narrow_class_group(F).structure(),
        "two": F.two_splitting,
        "dyadic_primes": [{"ideal": str(P), "e": P.e, "f": P.f} for P in dyadic_primes(F)],
        "H": [str(I) for I in h_set(F)],
    }


def level_table(F: FieldCtx) -> dict:
    rows = []
    for pred in predict_levels(F):
        rows.append({
            "m": str(pred.m),
            "lambda": None if pred.lambda_class is None else str(pred.lambda_class),
            "scenario": pred.scenario,
            "even_part": level_string(F, pred.even_part),
            "level": level_string(F, pred.level),
        })
    return {
        "cokernel_size": len(cokernel_classes(F)),
        "rows": rows,
        "distinct_levels": [level_string(F, L) for L in distinct_levels(F)],
    }


@dataclass
class Report:
    d: int
    field: dict
    levels: dict
    irreducibility: IrredReport
    verdict: Verdict

    def to_json(self) -> dict:
        F = make_field(self.d)
        v = self.verdict
        return {
            "d": self.d,
            "field": self.field,
            "levels": self.levels,
            "irreducibility": self.irreducibility.to_json(),
            "elimination": [r.to_json(F) for r in v.forms],
            "empty_levels": [level_string(F, L) for L in v.empty_levels],
            "verdict": {
                "outcome": v.outcome.value,
                "classes_mod_8": v.classes_mod_8,
                "missing_levels": [level_string(F, L) for L in v.missing_levels],
                "surviving_forms": v.surviving_forms,
                "cited": v.cited,
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        return render_text(self.to_json())


def _fmt_row(r: dict) -> str:
    lam = r["lambda"] if r["lambda"] is not None else "-"
    tail = "" if r["scenario"] == SCENARIO_DIVIDES else f"  [{r['scenario']}]"
    return f"    m={r['m']:<14} lambda={lam:<16} N_p={r['level']}{tail}"


def render_field(j: dict) -> list[str]:
    f = j["field"]
    return [f"Q(sqrt {j['d']})  disc={f['discriminant']}  2 is {f['two']}",
            f"  unit {f['fundamental_unit']} (norm {f['unit_norm']}),"
            f" totally positive {f['totally_positive_unit']}",
            f"  Cl = {f['class_group']}, narrow = {f['narrow_class_group']},"
            f" H = {{{', '.join(f['H'])}}}"]


def render_levels(j: dict) -> list[str]:
    lv = j["levels"]
    lines = [f"  levels ({lv['cokernel_size']} lambda classes):"]
    lines += [_fmt_row(r) for r in lv["rows"]]
    lines.append(f"  distinct: {', '.join(lv['distinct_levels'])}")
    return lines


def render_irred(ir: dict) -> list[str]:
    lines = ["  irreducibility:"]
    for ev in ir["case_i"]:
        lines.append(f"    ray class group mod {ev['modulus_str']}: {ev['group']}"
                     f" (exponent {ev['exponent']})")
    iib = ir["case_iib"]
    facs = " * ".join(f"{q}^{k}" if k > 1 else q for q, k in iib["factors"].items()) or "1"
    lines.append(f"    norm(u^{iib['n']} - 1) = {iib['norm']} = {facs}")
    for s in ir["case_iia"]:
        lines.append(f"    {s['q0_norm']}^{s['n']} = {s['residue']} mod {s['p']}")
    lines += [f"    note: {msg}" for msg in ir["resolved_by"]]
    lines += [f"    OBSTRUCTION: {msg}" for msg in ir["obstructions"]]
    if ir["residual"]:
        lines.append(f"    residual primes: {ir['residual']}")
    return lines


def render_elimination(j: dict) -> list[str]:
    lines = ["  elimination:"]
    lines += [f"    {L}: no newforms" for L in j["empty_levels"]]
    for r in j["elimination"]:
        cf = "C_f = 0" if r["c_f"] == "0" else f"survivors {r['survivors']}"
        lines.append(f"    {r['level']} {r['label']}: {cf}; {r['resolution']}")
    missing = j["verdict"]["missing_levels"]
    if missing:
        lines.append(f"    no data: {', '.join(missing)}")
    return lines


def verdict_line(v: dict) -> str:
    out = v["outcome"]
    if v["classes_mod_8"]:
        out += f" (p = {', '.join(map(str, v['classes_mod_8']))} mod 8)"
    if v["missing_levels"]:
        out += f"; no data at {', '.join(v['missing_levels'])}"
    if v["surviving_forms"]:
        out += f"; surviving forms {', '.join(v['surviving_forms'])}"
    return out


def render_text(j: dict) -> str:
    lines = render_field(j) + render_levels(j) + render_irred(j["irreducibility"])
    lines += render_elimination(j)
    lines.append(f"  verdict: {verdict_line(j['verdict'])}")
    return "\n".join(lines) + "\n"


def run_pipeline(d: int, dataset) -> Report:
    F = make_field(d)
    v = verdict(F, dataset)
    return Report(d, field_info(F), level_table(F), v.irred or irreducibility_report(F), v)
