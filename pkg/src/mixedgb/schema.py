"""Input documents (schema v1): parsing with located errors, and serialization.

A document looks like::

    {"field": {"type": "prime", "p": 65521},
     "model": "sparse",
     "sparse": {"ambient_dim": 2,
                "polytopes": [[[0, 0], [1, 0], [0, 1], [1, 1]]],
                "polynomials": [{"terms": [{"point": [1, 1], "coeff": "3"}]}]}}

or, for ``"model": "multihomogeneous"``::

    "multihom": {"blocks": [1, 1],
                 "polynomials": [{"multidegree": [1, 1],
                                  "terms": [{"exponents": [[1, 0], [0, 1]], "coeff": "-2"}]}]}

Coefficients are decimal strings (``"a/b"`` is accepted over Q).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .field import Field, FieldError, PrimeField, field_to_dict, make_field
from .multihom import MultigradedRing, MultihomSystem
from .poly import Poly, affine_ambient
from .semigroup import NotPointedError, SemigroupContext, SemigroupError, build_context

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Invalid input document. ``code`` identifies the kind of problem and
    ``path`` the offending location (``$.sparse.polynomials[0].terms[2]``)."""

    code = "E_SCHEMA"
    exit_code = 4

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{self.code} at {path}: {message}")
        self.path = path
        self.detail = message


class MalformedJSONError(InputError):
    code = "E_JSON"
    exit_code = 3


class SupportError(InputError):
    code = "E_SUPPORT"
    exit_code = 5


class NotMultihomogeneousError(InputError):
    code = "E_MULTIHOM"
    exit_code = 6


class NonPrimeError(InputError):
    code = "E_PRIME"
    exit_code = 7


class PolytopeError(InputError):
    code = "E_POLYTOPE"
    exit_code = 8


@dataclass
class SparseProblem:
    field: Field
    context: SemigroupContext
    polys: list[Poly]

    @property
    def single(self) -> SemigroupContext:
        return self.polys[0].ambient.ctx if self.polys else self.context.single_view()


@dataclass
class MultihomProblem:
    field: Field
    system: MultihomSystem


Problem = SparseProblem | MultihomProblem


def _expect(cond, msg, path, err=InputError):
    if not cond:
        raise err(msg, path)


def _int_list(value, path, length=None):
    _expect(isinstance(value, list), "expected a list of integers", path)
    for j, x in enumerate(value):
        _expect(isinstance(x, int) and not isinstance(x, bool), f"expected an integer, got {x!r}", f"{path}[{j}]")
    if length is not None:
        _expect(len(value) == length, f"expected {length} entries, got {len(value)}", path)
    return tuple(value)


def _coeff(field: Field, value, path):
    _expect(isinstance(value, str), f"coefficient must be a decimal string, got {value!r}", path)
    try:
        return field.from_str(value)
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise InputError(f"bad coefficient {value!r}: {exc}", path) from None


def _parse_field(spec, override_p=None) -> Field:
    if override_p is not None:
        spec = {"type": "prime", "p": override_p}
    if spec is None:
        return PrimeField()
    _expect(isinstance(spec, dict), "field must be an object", "$.field")
    kind = spec.get("type", "prime")
    _expect(kind in ("prime", "rational"), f"unknown field type {kind!r}", "$.field.type")
    if kind == "prime":
        p = spec.get("p", 65521)
        _expect(isinstance(p, int) and not isinstance(p, bool), f"p must be an integer, got {p!r}", "$.field.p")
    try:
        return make_field(spec)
    except FieldError as exc:
        raise NonPrimeError(str(exc), "$.field.p") from None


def _terms(poly_doc, path):
    _expect(isinstance(poly_doc, dict), "polynomial must be an object", path)
    terms = poly_doc.get("terms")
    _expect(isinstance(terms, list) and terms, "polynomial needs a nonempty 'terms' list", f"{path}.terms")
    for t, term in enumerate(terms):
        _expect(isinstance(term, dict), "term must be an object", f"{path}.terms[{t}]")
    return terms


def _parse_sparse(doc, field: Field) -> SparseProblem:
    _expect(isinstance(doc, dict), "missing 'sparse' section", "$.sparse")
    n = doc.get("ambient_dim")
    _expect(isinstance(n, int) and n >= 1, "ambient_dim must be a positive integer", "$.sparse.ambient_dim")
    polytopes = doc.get("polytopes")
    _expect(isinstance(polytopes, list) and polytopes, "polytopes must be a nonempty list", "$.sparse.polytopes")
    pts_all = []
    for i, M in enumerate(polytopes):
        path = f"$.sparse.polytopes[{i}]"
        _expect(isinstance(M, list) and M, "polytope must be a nonempty list of points", path)
        pts_all.append([_int_list(p, f"{path}[{j}]", n) for j, p in enumerate(M)])
        _expect((0,) * n in pts_all[-1], "polytope does not contain the origin", path, PolytopeError)
    try:
        ctx = build_context(pts_all)
    except NotPointedError as exc:
        raise PolytopeError(str(exc), "$.sparse.polytopes") from None
    except SemigroupError as exc:
        raise PolytopeError(str(exc), "$.sparse.polytopes") from None
    single = ctx.single_view()
    amb = affine_ambient(single)
    polys_doc = doc.get("polynomials")
    _expect(isinstance(polys_doc, list) and polys_doc, "polynomials must be a nonempty list", "$.sparse.polynomials")
    polys = []
    for i, pd in enumerate(polys_doc):
        path = f"$.sparse.polynomials[{i}]"
        terms = {}
        for t, term in enumerate(_terms(pd, path)):
            tpath = f"{path}.terms[{t}]"
            s = _int_list(term.get("point"), f"{tpath}.point", n)
            _expect(single.contains(s), f"point {list(s)} is not in the semigroup", f"{tpath}.point", SupportError)
            _expect(s not in terms, f"point {list(s)} repeated", f"{tpath}.point")
            terms[s] = _coeff(field, term.get("coeff"), f"{tpath}.coeff")
        p = Poly(terms, field, amb)
        _expect(not p.is_zero(), "polynomial is zero", path)
        polys.append(p)
    return SparseProblem(field, ctx, polys)


def _parse_multihom(doc, field: Field) -> MultihomProblem:
    _expect(isinstance(doc, dict), "missing 'multihom' section", "$.multihom")
    blocks = _int_list(doc.get("blocks"), "$.multihom.blocks")
    _expect(blocks and all(b >= 1 for b in blocks), "blocks must be positive integers", "$.multihom.blocks")
    ring = MultigradedRing(blocks)
    polys_doc = doc.get("polynomials")
    _expect(isinstance(polys_doc, list) and polys_doc, "polynomials must be a nonempty list", "$.multihom.polynomials")
    polys, degs = [], []
    for i, pd in enumerate(polys_doc):
        path = f"$.multihom.polynomials[{i}]"
        terms_doc = _terms(pd, path)
        deg = _int_list(pd.get("multidegree"), f"{path}.multidegree", ring.r)
        terms = {}
        for t, term in enumerate(terms_doc):
            tpath = f"{path}.terms[{t}]"
            ex = term.get("exponents")
            _expect(isinstance(ex, list) and len(ex) == ring.r, f"expected {ring.r} exponent blocks", f"{tpath}.exponents")
            flat = []
            for b, e in enumerate(ex):
                e = _int_list(e, f"{tpath}.exponents[{b}]", blocks[b] + 1)
                _expect(min(e) >= 0, "negative exponent", f"{tpath}.exponents[{b}]")
                flat.extend(e)
            m = tuple(flat)
            got = ring.degree(m)
            _expect(got == deg, f"term has multidegree {list(got)} but the polynomial declares {list(deg)}",
                    tpath, NotMultihomogeneousError)
            _expect(m not in terms, "repeated monomial", tpath)
            terms[m] = _coeff(field, term.get("coeff"), f"{tpath}.coeff")
        p = ring.poly(terms, field)
        _expect(not p.is_zero(), "polynomial is zero", path)
        polys.append(p)
        degs.append(deg)
    return MultihomProblem(field, MultihomSystem(ring, polys, degs))


def parse_document(doc, field_p: int | None = None) -> Problem:
    """Typed problem from an already-decoded document."""
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    version = doc.get("version", SCHEMA_VERSION)
    _expect(version == SCHEMA_VERSION, f"unsupported schema version {version!r}", "$.version")
    field = _parse_field(doc.get("field"), field_p)
    model = doc.get("model")
    if model == "sparse":
        return _parse_sparse(doc.get("sparse"), field)
    if model == "multihomogeneous":
        return _parse_multihom(doc.get("multihom"), field)
    raise InputError(f"model must be 'sparse' or 'multihomogeneous', got {model!r}", "$.model")


def parse_input(text: str, field_p: int | None = None) -> Problem:
    """Parse a JSON document. Errors carry a distinct code and a location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSONError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return parse_document(doc, field_p)


def load_input(path: str, field_p: int | None = None) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_input(fh.read(), field_p)


# -- serialization --


def poly_terms_sparse(p: Poly) -> list[dict]:
    return [{"point": list(m), "coeff": p.field.to_str(c)} for m, c in sorted(p.terms.items())]


def to_document(problem: Problem) -> dict:
    if isinstance(problem, SparseProblem):
        ctx = problem.context
        return {
            "version": SCHEMA_VERSION,
            "field": field_to_dict(problem.field),
            "model": "sparse",
            "sparse": {
                "ambient_dim": ctx.ambient_dim,
                "polytopes": [[list(p) for p in M] for M in ctx.polytopes],
                "polynomials": [{"terms": poly_terms_sparse(f)} for f in problem.polys],
            },
        }
    system = problem.system
    ring = system.ring
    polys = []
    for f, d in zip(system.polys, system.degrees):
        terms = [{"exponents": [list(ring.block(m, i)) for i in range(ring.r)], "coeff": f.field.to_str(c)}
                 for m, c in sorted(f.terms.items())]
        polys.append({"multidegree": list(d), "terms": terms})
    return {
        "version": SCHEMA_VERSION,
        "field": field_to_dict(problem.field),
        "model": "multihomogeneous",
        "multihom": {"blocks": list(ring.blocks), "polynomials": polys},
    }


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
