"""Newform dataset: JSON schema, validation, bundled fixtures and remote fetch.

File layout (UTF-8 JSON)::

    {"manifest": {"source": str, "retrieved": "YYYY-MM-DD",
                  "prime_norm_bound": int >= 60, "provenance": str},
     "groups": [{"d": int, "level": IDEAL, "citation": str (optional),
                 "forms": [{"label": str, "hecke_poly": [int, ...],
                            "eigenvalues": [{"prime": IDEAL, "a": [int, ...]}]}]}]}

IDEAL is ``{"norm": N, "gens": [[x1, y1], [x2, y2]]}`` with generators
(x + y sqrt d)/2. An empty ``forms`` list records that the level carries no
newforms; ``citation`` then names the registry fact asserting it.
"""

from __future__ import annotations

import datetime as _dt
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import facts
from .eliminate import PRIME_NORM_BOUND, NewformRecord
from .freylevel import distinct_levels
from .hecke import HeckeField, interval_eval
from .ideals import Ideal, PrimeIdeal, primes_up_to_norm
from .quadfield import FieldCtx, make_field

log = logging.getLogger(__name__)

ENDPOINT_ENV = "FERMATQUAD_ENDPOINT"
BUNDLED = "newforms.json"


class DatasetError(ValueError):
    """Rejected input, with a machine-readable ``code`` and a JSON-path ``where``."""

    def __init__(self, code: str, where: str, message: str):
        super().__init__(f"{code} at {where}: {message}")
        self.code = code
        self.where = where
        self.message = message


@dataclass(frozen=True)
class DatasetWarning:
    code: str
    where: str
    message: str


@dataclass
class Manifest:
    source: str
    retrieved: str
    prime_norm_bound: int = PRIME_NORM_BOUND
    provenance: str = ""
    urls: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"source": self.source, "retrieved": self.retrieved,
               "prime_norm_bound": self.prime_norm_bound, "provenance": self.provenance}
        if self.urls:
            out["urls"] = list(self.urls)
        return out


@dataclass
class LevelGroup:
    d: int
    level: Ideal
    forms: list[NewformRecord]
    citation: str | None = None


@dataclass
class NewformDataset:
    manifest: Manifest
    groups: dict[tuple[int, Ideal], LevelGroup] = field(default_factory=dict)
    warnings: list[DatasetWarning] = field(default_factory=list)

    def forms_at(self, d: int, level: Ideal) -> list[NewformRecord] | None:
        """Forms at (d, level); ``[]`` for a known-empty level, None when absent."""
        g = self.groups.get((d, level))
        return None if g is None else g.forms

    def citation_for(self, d: int, level: Ideal) -> str | None:
        g = self.groups.get((d, level))
        return g.citation if g else None

    def fields(self) -> list[int]:
        return sorted({d for d, _ in self.groups})

    def add_group(self, g: LevelGroup) -> None:
        self.groups[(g.d, g.level)] = g

    def to_json(self) -> dict:
        groups = sorted(self.groups.values(), key=lambda g: (g.d, g.level.key()))
        return {"manifest": self.manifest.to_json(),
                "groups": [group_to_json(g) for g in groups]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False) + "\n"


def form_to_json(f: NewformRecord) -> dict:
    eig = sorted(f.eigenvalues.items(), key=lambda kv: kv[0].key())
    return {"label": f.label, "hecke_poly": list(f.hecke.coeffs),
            "eigenvalues": [{"prime": q.to_json(), "a": list(a)} for q, a in eig]}


def group_to_json(g: LevelGroup) -> dict:
    out = {"d": g.d, "level": g.level.to_json()}
    if g.citation:
        out["citation"] = g.citation
    out["forms"] = [form_to_json(f) for f in g.forms]
    return out


# -- validation -----------------------------------------------------------------------

def _need(obj: dict, key: str, kind, where: str):
    if not isinstance(obj, dict):
        raise DatasetError("schema", where, "expected an object")
    if key not in obj:
        raise DatasetError("schema", f"{where}.{key}", "missing field")
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise DatasetError("schema", f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


def _int_list(val, where: str) -> list[int]:
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise DatasetError("schema", where, "expected a list of integers")
    return val


def _ideal(F: FieldCtx, obj, where: str) -> Ideal:
    _need(obj, "norm", int, where)
    gens = _need(obj, "gens", list, where)
    if len(gens) != 2 or not all(isinstance(g, list) and len(g) == 2 for g in gens):
        raise DatasetError("schema", f"{where}.gens", "expected two [x, y] pairs")
    for k, g in enumerate(gens):
        _int_list(g, f"{where}.gens[{k}]")
    try:
        return Ideal.from_json(F, obj)
    except ValueError as exc:
        raise DatasetError("ideal", where, str(exc)) from None


def manifest_from_json(obj, where: str = "manifest") -> Manifest:
    src = _need(obj, "source", str, where)
    ret = _need(obj, "retrieved", str, where)
    try:
        _dt.date.fromisoformat(ret[:10])
    except ValueError:
        raise DatasetError("schema", f"{where}.retrieved", "expected an ISO date") from None
    bound = _need(obj, "prime_norm_bound", int, where)
    if bound < PRIME_NORM_BOUND:
        raise DatasetError("prime_bound", f"{where}.prime_norm_bound",
                           f"bound {bound} is below {PRIME_NORM_BOUND}")
    prov = _need(obj, "provenance", str, where)
    urls = obj.get("urls", [])
    if not isinstance(urls, list) or not all(isinstance(u, str) for u in urls):
        raise DatasetError("schema", f"{where}.urls", "expected a list of strings")
    return Manifest(src, ret, bound, prov, list(urls))


def check_hecke_bound(H: HeckeField, a: list[int], Nq: int, where: str) -> None:
    """|sigma(a)| <= 2 sqrt(Nq) at every real embedding, decided by interval
    arithmetic on isolating intervals (exact for Q_f = Q)."""
    limit = 4 * Nq
    if H.degree == 1:
        v = H.reduce(a)[0]
        if v * v > limit:
            raise DatasetError("hecke_bound", where, f"|{v}| > 2 sqrt({Nq})")
        return
    for k in range(H.degree):
        eps = Fraction(1, 10**12)
        for _ in range(6):
            lo, hi = H.real_embeddings(eps)[k]
            vlo, vhi = interval_eval(a, lo, hi)
            top = max(abs(vlo), abs(vhi))
            if top * top <= limit:
                break
            bottom = Fraction(0) if vlo <= 0 <= vhi else min(abs(vlo), abs(vhi))
            if bottom * bottom > limit:
                raise DatasetError("hecke_bound", where,
                                   f"embedding {k} of a_q exceeds 2 sqrt({Nq})")
            eps = eps ** 2
        else:
            raise DatasetError("hecke_bound_undecided", where,
                               f"could not certify the bound at embedding {k}")


def _prime_table(F: FieldCtx, bound: int) -> dict[Ideal, PrimeIdeal]:
    return {P: P for P in primes_up_to_norm(F, bound) if P.norm < bound}


def form_from_json(F: FieldCtx, level: Ideal, obj, where: str, bound: int,
                   primes: dict[Ideal, PrimeIdeal]) -> NewformRecord:
    label = _need(obj, "label", str, where)
    coeffs = _int_list(_need(obj, "hecke_poly", list, where), f"{where}.hecke_poly")
    try:
        H = HeckeField(coeffs)
    except ValueError as exc:
        raise DatasetError("hecke_poly", f"{where}.hecke_poly", str(exc)) from None
    if H.degree > 1:
        if not H.is_irreducible():
            raise DatasetError("hecke_poly", f"{where}.hecke_poly", "reducible over Q")
        if len(H.real_embeddings()) != H.degree:
            raise DatasetError("hecke_poly", f"{where}.hecke_poly", "Q_f is not totally real")
    eigs: dict[PrimeIdeal, list[int]] = {}
    for k, e in enumerate(_need(obj, "eigenvalues", list, where)):
        w = f"{where}.eigenvalues[{k}]"
        I = _ideal(F, _need(e, "prime", dict, w), f"{w}.prime")
        if I.norm >= bound:
            raise DatasetError("prime_bound", f"{w}.prime", f"norm {I.norm} >= {bound}")
        P = primes.get(I)
        if P is None:
            raise DatasetError("not_prime", f"{w}.prime", f"{I} is not a prime ideal")
        if P.contains_ideal(level):
            raise DatasetError("not_coprime", f"{w}.prime", f"{P} divides the level")
        if P in eigs:
            raise DatasetError("duplicate", f"{w}.prime", f"repeated prime {P}")
        a = _int_list(_need(e, "a", list, w), f"{w}.a")
        a = H.reduce(a) if a else H.const(0)
        check_hecke_bound(H, a, P.norm, f"{w}.a")
        eigs[P] = a
    return NewformRecord(F.d, level, label, H, eigs)


def group_from_json(obj, where: str, bound: int,
                    warnings: list[DatasetWarning]) -> LevelGroup:
    d = _need(obj, "d", int, where)
    try:
        F = make_field(d)
    except ValueError as exc:
        raise DatasetError("field", f"{where}.d", str(exc)) from None
    level = _ideal(F, _need(obj, "level", dict, where), f"{where}.level")
    if level not in distinct_levels(F):
        warnings.append(DatasetWarning("level_not_predicted", f"{where}.level",
                                       f"{level} is not a predicted level for d={d}"))
    citation = obj.get("citation")
    if citation is not None and citation not in facts.REGISTRY:
        raise DatasetError("citation", f"{where}.citation", f"unknown fact {citation!r}")
    primes = _prime_table(F, bound)
    forms = [form_from_json(F, level, f, f"{where}.forms[{k}]", bound, primes)
             for k, f in enumerate(_need(obj, "forms", list, where))]
    labels = [f.label for f in forms]
    if len(set(labels)) != len(labels):
        raise DatasetError("duplicate", f"{where}.forms", "repeated form label")
    return LevelGroup(d, level, forms, citation)


def parse_dataset(obj) -> NewformDataset:
    if not isinstance(obj, dict):
        raise DatasetError("schema", "$", "expected an object")
    man = manifest_from_json(_need(obj, "manifest", dict, "$"))
    ds = NewformDataset(man)
    for k, g in enumerate(_need(obj, "groups", list, "$")):
        grp = group_from_json(g, f"groups[{k}]", man.prime_norm_bound, ds.warnings)
        if (grp.d, grp.level) in ds.groups:
            raise DatasetError("duplicate", f"groups[{k}]", "repeated (d, level)")
        ds.add_group(grp)
    for w in ds.warnings:
        log.warning("%s at %s: %s", w.code, w.where, w.message)
    return ds


def loads_dataset(text: str) -> NewformDataset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetError("json", f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_dataset(obj)


def load_dataset(path: str | os.PathLike) -> NewformDataset:
    return loads_dataset(Path(path).read_text(encoding="utf-8"))


def bundled_path():
    return resources.files("fermatquad") / "data" / BUNDLED


def load_bundled() -> NewformDataset:
    return loads_dataset(bundled_path().read_text(encoding="utf-8"))


def write_dataset(ds: NewformDataset, path: str | os.PathLike) -> None:
    """Atomic write: a partially written file is never left at ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(ds.dumps())
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


# -- bundled fixtures ----------------------------------------------------------------

FIXTURE_PROVENANCE = (
    "No Hilbert modular form database was reachable when this file was built. "
    "Groups are derived, not downloaded: d=3 level P^4 and d=17 level (2) carry "
    "the traces of Frobenius of the curves E' and W, counted point by point over "
    "every residue field of norm < 60 (facts NEWFORM_D3_P4 and NEWFORM_D17_2 "
    "assert these levels hold exactly one newform, with those eigenvalues). "
    "d=2 level P is recorded empty (fact JARVIS_MEEKIN). All other levels are absent."
)


def curve_group(c, bound: int = PRIME_NORM_BOUND) -> LevelGroup:
    F = c.curve.field
    eigs = {q: [c.curve.trace(q)] for q in primes_up_to_norm(F, bound)
            if q.norm < bound and not q.contains_ideal(c.level)}
    form = NewformRecord(F.d, c.level, f"{F.d}.{c.name}", HeckeField([0, 1]), eigs)
    return LevelGroup(F.d, c.level, [form], c.fact_key)


def build_fixtures(retrieved: str = "2026-10-15") -> NewformDataset:
    from .curves import e_prime, w_curve
    from .freylevel import dyadic_primes

    ds = NewformDataset(Manifest("derived: certified curves and cited empty spaces",
                                 retrieved, PRIME_NORM_BOUND, FIXTURE_PROVENANCE))
    F2 = make_field(2)
    (P,) = dyadic_primes(F2)
    ds.add_group(LevelGroup(2, Ideal(F2, P.a, P.b, P.c), [], "JARVIS_MEEKIN"))
    ds.add_group(curve_group(e_prime()))
    ds.add_group(curve_group(w_curve()))
    return ds


# -- remote fetch --------------------------------------------------------------------

def _endpoint(endpoint: str | None) -> str:
    ep = endpoint or os.environ.get(ENDPOINT_ENV)
    if not ep:
        raise DatasetError("no_endpoint", "$", f"set {ENDPOINT_ENV} or pass an endpoint")
    return ep.rstrip("/")


def fetch_remote(d: int, level: Ideal, endpoint: str | None = None, *,
                 cache: str | os.PathLike | None = None, client=None,
                 timeout: float = 30.0) -> list[NewformRecord]:
    """GET ``{endpoint}/newforms`` for one (d, level) and cache the result.

    The response body is one group object of the dataset schema. Transport
    errors and schema mismatches leave the cache untouched.
    """
    import httpx

    url = f"{_endpoint(endpoint)}/newforms"
    params = {"d": d, "level_norm": level.norm,
              "level_gens": json.dumps(level.to_json()["gens"], separators=(",", ":"))}
    own = client is None
    client = client or httpx.Client(timeout=timeout)
    try:
        resp = client.get(url, params=params)
        resp.raise_for_status()
        body = resp.json()
    except httpx.HTTPError as exc:
        raise DatasetError("transport", url, str(exc)) from None
    except ValueError as exc:
        raise DatasetError("json", url, str(exc)) from None
    finally:
        if own:
            client.close()
    if not isinstance(body, dict) or body.get("d") != d:
        got = body.get("d") if isinstance(body, dict) else None
        raise DatasetError("field_mismatch", f"{url}.d", f"asked for d={d}, response has {got!r}")
    warnings: list[DatasetWarning] = []
    grp = group_from_json(body, "response", PRIME_NORM_BOUND, warnings)
    if grp.level != level:
        raise DatasetError("level_mismatch", "response.level",
                           f"asked for {level}, response has {grp.level}")
    if cache is not None:
        now = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
        if Path(cache).exists():
            ds = load_dataset(cache)
        else:
            ds = NewformDataset(Manifest("remote", now, PRIME_NORM_BOUND,
                                         "fetched from a remote newform endpoint"))
        ds.add_group(grp)
        ds.manifest.retrieved = now
        full = str(resp.request.url)
        if full not in ds.manifest.urls:
            ds.manifest.urls.append(full)
        write_dataset(ds, cache)
    return grp.forms

