"""Command-line front end: read a braiding / bilinear-form document, run the
certification stages and print a text or JSON report.

Exit codes: 0 certified, 1 failed, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .bialgebra import PresentedBialgebra, check_comul_welldefined, dvl_bialgebra, frt_bialgebra
from .braiding import BilinearForm, Braiding, BraidingError, check_braid, check_rigid
from .corep import CorepError, check_colinearity, corep_matrices, quantum_determinant, verify_determinant_identities
from .freealg import NcPoly, RewriteSystem
from .hopf import (
    LocalizationError,
    build_antipode,
    dvl_antipode,
    localize,
    redundancy_probe,
    verify_hopf,
)
from .nichols import NicholsData, NicholsError, PairingError, check_poincare, nichols_compute, pairing_data
from .report import CERTIFIED, EXIT_CODES, EXIT_INPUT_ERROR, FAILED, INCONCLUSIVE, CertificationReport, Stage
from .scalars import FieldScalar, FieldSpec, primitive_root, render_scalar

COMMANDS = ("pipeline", "dvl", "probe", "nichols", "check-braid")


class InputError(ValueError):
    """Malformed input document or flag value (exit code 3)."""


@dataclass
class PipelineConfig:
    command: str
    input_path: str | None = None
    q: str = "1"
    q_scan: list | None = None  # candidate root-of-unity orders
    max_degree: int = 6
    truncation: int = 6
    fmt: str = "text"
    seed: int = 0
    output: str | None = None
    probe: bool = False


@dataclass
class InputDocument:
    field: FieldSpec
    n: int
    braiding: Braiding | None = None
    bilinear_form: BilinearForm | None = None
    raw: dict = field(default_factory=dict, repr=False)


# --- input parsing --------------------------------------------------------------------

def _parse_field(spec) -> FieldSpec:
    if spec is None or spec in ("Q", "rationals"):
        return FieldSpec.rationals()
    if isinstance(spec, dict) and set(spec) == {"cyclotomic"}:
        m = spec["cyclotomic"]
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise InputError(f"cyclotomic order must be a positive integer, got {m!r}")
        return FieldSpec.cyclotomic(m)
    raise InputError(f'field must be "Q" or {{"cyclotomic": m}}, got {spec!r}')


def _scalar(value, F: FieldSpec) -> FieldScalar:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"scalars are integers or strings such as \"-1/2\" or \"z^2\", got {value!r}")
    try:
        return F(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse scalar {value!r}: {exc}") from None


def _matrix(rows, F: FieldSpec, what: str) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a list of rows")
    return [[_scalar(v, F) for v in r] for r in rows]


def _parse_braiding(spec, n: int, F: FieldSpec) -> Braiding:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise InputError('braiding must be one of {"flip_scaled": q}, {"diagonal": [[...]]}, {"dense": [...]}')
    (kind, value), = spec.items()
    if kind == "flip_scaled":
        return Braiding.flip_scaled(n, F, _scalar(value, F))
    if kind == "diagonal":
        q = _matrix(value, F, "diagonal braiding")
        if len(q) != n or any(len(r) != n for r in q):
            raise InputError(f"diagonal braiding must be {n}x{n}")
        return Braiding.diagonal(F, q)
    if kind == "dense":
        if not isinstance(value, list):
            raise InputError("dense braiding must be a list")
        if value and all(isinstance(r, list) for r in value):
            data = _matrix(value, F, "dense braiding")
        else:
            data = [_scalar(v, F) for v in value]
        try:
            return Braiding.dense(n, F, data)
        except (BraidingError, ValueError) as exc:
            raise InputError(f"dense braiding: {exc}") from None
    raise InputError(f"unknown braiding kind {kind!r}")


def parse_document(doc) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    unknown = set(doc) - {"field", "n", "braiding", "bilinear_form"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}")
    F = _parse_field(doc.get("field"))
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    c = _parse_braiding(doc["braiding"], n, F) if "braiding" in doc else None
    b = None
    if "bilinear_form" in doc:
        B = _matrix(doc["bilinear_form"], F, "bilinear_form")
        if len(B) != n or any(len(r) != n for r in B):
            raise InputError(f"bilinear_form must be {n}x{n}")
        try:
            b = BilinearForm(F, B)
        except BraidingError as exc:
            raise InputError(str(exc)) from None
    return InputDocument(F, n, c, b, doc)


def load_document(path: str | None) -> InputDocument:
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return parse_document(doc)


# --- shared stage helpers ---------------------------------------------------------------

def _rewrite_stage(name: str, R: RewriteSystem, extra: dict | None = None) -> Stage:
    witness = R.summary()
    witness.update(extra or {})
    status = INCONCLUSIVE if R.aborted else CERTIFIED
    return Stage(name, status, R.complete_below, witness)


def _braid_stage(c: Braiding) -> Stage:
    bc = check_braid(c)
    if bc:
        return Stage("braid equation", CERTIFIED, None, {"n": c.n})
    return Stage("braid equation", FAILED, None,
                 {"index": list(bc.witness), "lhs": str(bc.lhs), "rhs": str(bc.rhs)},
                 "(c(x)1)(1(x)c)(c(x)1) and (1(x)c)(c(x)1)(1(x)c) differ")


def _rigid_stage(c: Braiding) -> Stage:
    rc = check_rigid(c)
    witness = {"c invertible": rc.invertible, "flat map invertible": rc.flat_invertible}
    return Stage("rigidity", CERTIFIED if rc else FAILED, None, witness,
                 f"criterion: {rc.criterion}" if rc else rc.diagnostics())


def _spot_check(R: RewriteSystem, polys, rng: random.Random, samples: int = 20) -> Stage:
    """Reduce with randomly chosen rule matches and compare with the canonical normal form.

    Inside the certified degree range every reduction path must end at the same
    normal form, so any disagreement exposes an incomplete rewrite system.
    """
    alphabet, F = R.alphabet, R.field
    top = max(1, min(R.complete_below, 4))
    candidates = [p for p in polys if p.degree <= R.complete_below]
    for _ in range(samples):
        k = rng.randint(1, top)
        w = tuple(rng.randrange(len(alphabet)) for _ in range(k))
        candidates.append(NcPoly._raw(alphabet, F, {w: F.one}))
    mismatches = {}
    for p in candidates:
        a = R.reduce_poly(p)
        b = R.reduce_poly(p, rng)
        if a != b:
            mismatches[p.render()] = {"canonical": a.render(), "random path": b.render()}
    witness = {"checked": len(candidates)}
    if mismatches:
        witness["mismatches"] = mismatches
        return Stage("randomised reduction check", FAILED, R.complete_below, witness)
    return Stage("randomised reduction check", CERTIFIED, R.complete_below, witness)


def _q_candidates(cfg: PipelineConfig, F: FieldSpec):
    """(label, q or None, note) in scan order."""
    if not cfg.q_scan:
        try:
            return [(cfg.q, F(cfg.q), "")]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--q: {exc}") from None
    out = []
    for order in cfg.q_scan:
        try:
            out.append((f"order {order}", primitive_root(F, order), ""))
        except ValueError:
            out.append((f"order {order}", None, f"no primitive root of order {order} in {F.describe()}"))
    return out


def _nichols_stage(cfg: PipelineConfig, c: Braiding, report: CertificationReport):
    """Run (or scan) the Nichols computation; returns NicholsData or None after recording the stage."""
    tried = []
    last_prefix = []
    for label, q, note in _q_candidates(cfg, c.field):
        if q is None:
            tried.append({"candidate": label, "result": note})
            continue
        if not q:
            raise InputError("q must be non-zero")
        try:
            N = nichols_compute(c, q, cfg.max_degree)
        except NicholsError as exc:
            report.add(Stage("Nichols algebra", FAILED, cfg.max_degree,
                             {"q": render_scalar(q), "tried": tried}, str(exc)))
            return None
        if isinstance(N, NicholsData):
            tried.append({"candidate": label, "q": render_scalar(q), "result": "finite"})
            report.hilbert_prefix = list(N.hilbert)
            report.info["q"] = render_scalar(q)
            witness = {"q": render_scalar(q), "top": N.top, "dims": list(N.hilbert),
                       "b": "x" + "x".join(str(i + 1) for i in N.b_word) if N.top else "1"}
            if cfg.q_scan:
                witness["tried"] = tried
            if not check_poincare(N):
                report.add(Stage("Nichols algebra", FAILED, cfg.max_degree, witness,
                                 "graded dimensions are not palindromic"))
                return None
            report.add(Stage("Nichols algebra", CERTIFIED, cfg.max_degree, witness,
                             f"dim B^top = 1 at top = {N.top}; dims palindromic"))
            return N
        tried.append({"candidate": label, "q": render_scalar(q), "result": "no zero degree",
                      "dims": list(N.hilbert_prefix)})
        last_prefix = list(N.hilbert_prefix)
    report.hilbert_prefix = last_prefix
    report.add(Stage("Nichols algebra", INCONCLUSIVE, cfg.max_degree, {"tried": tried},
                     f"no finite-dimensional Nichols algebra found up to degree {cfg.max_degree}"))
    return None


def _pairing_stage(N: NicholsData, report: CertificationReport):
    try:
        P = pairing_data(N)
    except PairingError as exc:
        report.add(Stage("pairing and coevaluation", FAILED, N.top, {}, str(exc)))
        return None
    witness = {
        "omega": [_coords(v) for v in P.omega_basis],
        "omega_hat": [_coords(v) for v in P.omega_hat_basis],
        "m": [[str(x) for x in row] for row in P.m_matrix],
        "dual basis normalised": P.dual_basis_ok,
        "coev normalised": P.coev_normalised_ok,
    }
    ok = P.dual_basis_ok and P.coev_normalised_ok
    report.add(Stage("pairing and coevaluation", CERTIFIED if ok else FAILED, N.top, witness,
                     "pairing and coevaluation matrices invertible" if ok else "normalisation failed"))
    return P if ok else None


def _coords(v: dict) -> dict:
    return {str(a + 1): str(x) for a, x in sorted(v.items())}


def _render_matrix(M) -> list:
    return [[p.render() for p in row] for row in M]


# --- commands -----------------------------------------------------------------------------

def _new_report(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    info = {"field": doc.field.describe(), "n": doc.n, "seed": cfg.seed}
    if cfg.command in ("pipeline", "dvl", "probe"):
        info["truncation"] = cfg.truncation
    if cfg.command in ("pipeline", "nichols"):
        info["max_degree"] = cfg.max_degree
    return CertificationReport(cfg.command, info=info)


def _need_braiding(doc: InputDocument) -> Braiding:
    if doc.braiding is None:
        raise InputError("this command needs a \"braiding\" entry")
    return doc.braiding


def _need_form(doc: InputDocument) -> BilinearForm:
    if doc.bilinear_form is None:
        raise InputError("this command needs a \"bilinear_form\" entry")
    return doc.bilinear_form


def run_check_braid(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    c = _need_braiding(doc)
    report = _new_report(cfg, doc)
    report.add(_braid_stage(c))
    report.add(_rigid_stage(c))
    return report


def run_nichols(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    c = _need_braiding(doc)
    report = _new_report(cfg, doc)
    if not report.add(_braid_stage(c)):
        return report
    N = _nichols_stage(cfg, c, report)
    if N is not None and N.top >= 1:
        _pairing_stage(N, report)
    return report


def run_pipeline(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    """Braiding -> FRT bialgebra -> Nichols algebra -> D -> localisation -> antipode."""
    c = _need_braiding(doc)
    rng = random.Random(cfg.seed)
    report = _new_report(cfg, doc)
    for stage in (_braid_stage(c), _rigid_stage(c)):
        if not report.add(stage):
            return report
    A = frt_bialgebra(c, cfg.truncation)
    if not report.add(_rewrite_stage("FRT bialgebra", A.rewrite, {"relations": len(A.relations)})):
        return report
    N = _nichols_stage(cfg, c, report)
    if N is None:
        return report
    if cfg.truncation < 2 * N.top:
        bumped = 2 * N.top
        report.info["notice"] = f"truncation raised from {cfg.truncation} to {bumped} (2*top)"
        report.info["truncation"] = bumped
        A = frt_bialgebra(c, bumped)
        if not report.add(_rewrite_stage("FRT bialgebra (re-completed)", A.rewrite)):
            return report
    P = _pairing_stage(N, report)
    if P is None:
        return report
    try:
        D = quantum_determinant(A, N)
    except CorepError as exc:
        report.add(Stage("quantum determinant", FAILED, A.rewrite.complete_below, {}, str(exc)))
        return report
    report.D = D.render()
    report.add(Stage("quantum determinant", CERTIFIED, A.rewrite.complete_below,
                     {"D": report.D, "degree": D.degree}, "rho(b) = D (x) b, D group-like"))
    C = corep_matrices(A, N, P, D)
    report.add(Stage("corepresentation matrices", CERTIFIED, A.rewrite.complete_below,
                     {"T": _render_matrix(C.T), "That": _render_matrix(C.That)}))
    for stage in (verify_determinant_identities(C, A), check_colinearity(A, N, P, D)):
        if not report.add(stage):
            return report
    try:
        L = localize(A, D)
    except LocalizationError as exc:
        report.add(Stage("localisation", FAILED, A.rewrite.complete_below, {}, str(exc)))
        return report
    R = L.rewrite
    inv_ok = not R.reduce_poly(L.D * L.dinv_poly - 1) and not R.reduce_poly(L.dinv_poly * L.D - 1)
    stage = _rewrite_stage("localisation", R)
    if not inv_ok:
        stage.status = FAILED
        stage.note = "D*Dinv - 1 or Dinv*D - 1 does not reduce to 0"
    if not report.add(stage):
        return report
    S, agree = build_antipode(L, C)
    report.antipode = S.render()
    if not report.add(agree):
        return report
    if not report.add(verify_hopf(L, S)):
        return report
    probes = [S(p) for p in L.relations] + [S(L.t(i, j)) * L.t(j, i) for i in range(L.n) for j in range(L.n)]
    report.add(_spot_check(R, probes, rng))
    return report


def _dvl_algebra(cfg: PipelineConfig, b: BilinearForm, report: CertificationReport) -> PresentedBialgebra | None:
    A = dvl_bialgebra(b, cfg.truncation)
    if not report.add(_rewrite_stage("DVL bialgebra", A.rewrite, {"relations": len(A.relations)})):
        return None
    cc = check_comul_welldefined(A)
    witness = {"relations checked": cc.checked, "within certified degree": cc.certified}
    if cc:
        status = CERTIFIED if cc.certified else INCONCLUSIVE
        report.add(Stage("comultiplication", status, A.rewrite.complete_below, witness))
    else:
        witness.update({"relation": A.relations[cc.offending].render(), "normal form": cc.witness})
        report.add(Stage("comultiplication", FAILED, A.rewrite.complete_below, witness))
    return A if report.stages[-1].ok else None


def run_dvl(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    b = _need_form(doc)
    rng = random.Random(cfg.seed)
    report = _new_report(cfg, doc)
    report.add(Stage("bilinear form", CERTIFIED, None, {"Binv": [[str(x) for x in r] for r in b.Binv]},
                     "B*Binv = Binv*B = Id"))
    A = _dvl_algebra(cfg, b, report)
    if A is None:
        return report
    S, stage = dvl_antipode(A, b)
    report.antipode = S.render()
    if report.add(stage):
        report.add(_spot_check(A.rewrite, [S(p) for p in A.relations], rng))
    if cfg.probe:
        _attach_probe(report, b, cfg.truncation)
    return report


def _attach_probe(report: CertificationReport, b: BilinearForm, d: int) -> None:
    result = redundancy_probe(b, d)
    report.info["probe summary"] = result.summary
    for e in result.entries:
        report.info[f"probe family (2) {e['index']}"] = f"{e['status']}; normal form {e['normal_form']}"
    report.add(result.to_stage())


def run_probe(cfg: PipelineConfig, doc: InputDocument) -> CertificationReport:
    b = _need_form(doc)
    report = _new_report(cfg, doc)
    _attach_probe(report, b, cfg.truncation)
    return report


RUNNERS = {
    "pipeline": run_pipeline,
    "dvl": run_dvl,
    "probe": run_probe,
    "nichols": run_nichols,
    "check-braid": run_check_braid,
}


# --- argument handling -------------------------------------------------------------------

def _orders(text: str) -> list:
    try:
        orders = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated orders, got {text!r}") from None
    if not orders or any(m < 1 for m in orders):
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return orders


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hopfcert", description="Exact certification of FRT bialgebras, "
                     "Nichols algebras and antipodes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", default="-", help="JSON input document ('-' for stdin)")
        p.add_argument("--max-degree", type=_positive, default=6, help="highest Nichols degree probed")
        p.add_argument("--truncation", type=_positive, default=6, help="completion degree bound")
        qs = p.add_mutually_exclusive_group()
        qs.add_argument("--q", default=None, help="scalar q, e.g. -1 or z^2 (default 1)")
        qs.add_argument("--q-scan", type=_orders, default=None,
                        help="comma-separated root-of-unity orders to try, e.g. 2,3,4,6")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        if name == "dvl":
            p.add_argument("--probe", action="store_true", help="attach the redundancy probe")
    return parser


def config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        command=args.command,
        input_path=args.input,
        q="1" if args.q is None else args.q,
        q_scan=args.q_scan,
        max_degree=args.max_degree,
        truncation=args.truncation,
        fmt=args.format,
        seed=args.seed,
        output=args.output,
        probe=getattr(args, "probe", False),
    )


def execute(cfg: PipelineConfig, doc: InputDocument | None = None) -> CertificationReport:
    if doc is None:
        doc = load_document(cfg.input_path)
    if cfg.command in ("pipeline", "nichols") and cfg.max_degree < 2:
        raise InputError("--max-degree must be at least 2")
    return RUNNERS[cfg.command](cfg, doc)


def render(report: CertificationReport, fmt: str) -> str:
    return report.to_json() if fmt == "json" else report.to_text()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        report = execute(cfg)
    except InputError as exc:
        print(f"hopfcert: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = render(report, cfg.fmt)
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"hopfcert: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    else:
        sys.stdout.write(text)
    return EXIT_CODES[report.status]


if __name__ == "__main__":
    sys.exit(main())
