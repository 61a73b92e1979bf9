"""Command-line surface: ``adinkralab SUBCOMMAND ...``.

FILE arguments take a path to a JSON document or the name of a bundled one
(``adinkralab list`` prints those).
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import adinkra as ak
from . import clifford as cl
from . import codes
from . import cohomology as co
from . import complexes as cx
from . import formats as fm

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3
EXIT_SCHEMA = 4
EXIT_GUARD = 5
EXIT_HYPOTHESIS = 6

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class Abort(click.ClickException):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.exit_code = code


def _read_text(source: str) -> str:
    p = Path(source)
    if p.is_file():
        return p.read_text()
    try:
        return fm.bundled_text(source)
    except KeyError:
        raise Abort(f"no such file or bundled document: {source}", EXIT_USAGE) from None


def _load_raw(source: str):
    try:
        return fm.loads(_read_text(source))
    except fm.FormatError as exc:
        raise Abort(str(exc), EXIT_MALFORMED) from None


def _load_adinkra(source: str) -> ak.Adinkra:
    raw = _load_raw(source)
    try:
        return fm.adinkra_from_json(raw)
    except fm.FormatError as exc:
        raise Abort(str(exc), EXIT_SCHEMA) from None
    except ak.AdinkraError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None


def _require_valid(A: ak.Adinkra) -> None:
    report = ak.validate_any(A)
    if not report.ok:
        raise Abort(report.summary(), EXIT_INVALID)


def _require_vertex(A: ak.Adinkra, vid: str) -> None:
    if not A.has_vertex(vid):
        raise Abort(f"no vertex {vid!r}; ids: {', '.join(v.id for v in A.vertices)}", EXIT_USAGE)


def _names(A: ak.Adinkra) -> list[str]:
    return A.signature.variable_names()


def _emit_adinkra(A: ak.Adinkra) -> None:
    click.echo(fm.dump_adinkra(A), nl=False)


def _q_label(sig) -> str:
    if sig.n_mu or sig.n_rho:
        return "q"
    return "q" + str(sig.n_lambda).translate(_SUBSCRIPTS)


@click.group()
@click.option("--seed", type=int, default=None,
              help="Seed for the randomized basis-change helper used by report.")
@click.pass_context
def main(ctx, seed):
    """Adinkras as complexes of free modules over polynomial rings."""
    ctx.ensure_object(dict)
    ctx.obj["seed"] = seed


@main.command("list")
@click.option("--kind", type=click.Choice(["adinkra", "chain_map", "code", "all"]), default="adinkra")
def list_cmd(kind):
    """List the bundled documents."""
    if kind == "code":
        names = fm.bundled_code_names()
    else:
        names = fm.bundled_names(None if kind == "all" else kind)
    for n in names:
        click.echo(n)


@main.command()
@click.argument("file")
@click.option("--q", "q_mode", is_flag=True, help="Validate as a q-Adinkra (waved edges allowed).")
def validate(file, q_mode):
    """Check the Adinkra axioms; exit 1 on a violation."""
    A = _load_adinkra(file)
    if q_mode:
        report = ak.validate_q(A)
    elif A.signature.n_mu or A.signature.n_rho:
        report = ak.validate_any(A)
    else:
        report = ak.validate(A)
    click.echo(report.summary())
    if not report.ok:
        sys.exit(EXIT_INVALID)


@main.command("complex")
@click.argument("file")
@click.option("--adjoint", "with_adjoint", is_flag=True, help="Also print d-dagger.")
@click.option("--check-laplacian", is_flag=True, help="Verify (d + d-dagger)^2 = q id.")
@click.option("--json", "as_json", is_flag=True, help="Emit the free_complex JSON document.")
def complex_cmd(file, with_adjoint, check_laplacian, as_json):
    """Print the differentials of C(A)."""
    A = _load_adinkra(file)
    _require_valid(A)
    C = cx.complex_of(A)
    names = _names(A)
    if as_json:
        doc = fm.complex_to_json(C)
        if with_adjoint:
            doc["adjoints"] = [{"degree": n, "matrix": fm.matrix_to_json(C.sig, m)}
                               for n, m in sorted(cx.adjoint_of(C).items())]
        click.echo(fm.dumps(doc), nl=False)
    else:
        for n in C.degrees():
            if n + 1 in C.shifts:
                click.echo(f"d^{n}: C^{n} -> C^{n + 1}")
                click.echo(C.d(n).to_text(names))
        if with_adjoint:
            for n, m in sorted(cx.adjoint_of(C).items()):
                click.echo(f"d†^{n}: C^{n} -> C^{n - 1}")
                click.echo(m.to_text(names))
    if check_laplacian:
        report = cx.check_laplacian(C)
        click.echo(report.summary(), err=as_json)
        if not report.ok:
            sys.exit(EXIT_INVALID)


@main.command()
@click.argument("file")
@click.option("--max-degree", "max_degree", type=int, default=8, show_default=True)
@click.option("--ring", type=click.Choice(["R", "RmodQ"]), default="R", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def cohomology(file, max_degree, ring, fmt):
    """Hilbert functions dim H^n(C)_d for d <= max degree."""
    A = _load_adinkra(file)
    _require_valid(A)
    C = cx.complex_of(A)
    if max_degree < C.max_shift():
        raise Abort(f"--max-degree {max_degree} is below the largest shift {C.max_shift()}", EXIT_GUARD)
    if ring == "RmodQ":
        C = replace(C, quotient=True)
    prof = co.hilbert_profile(C, max_degree)
    click.echo(prof.to_csv() if fmt == "csv" else prof.to_json() + "\n", nl=False)


@main.command("raise")
@click.argument("file")
@click.option("--vertex", required=True, help="Id of a vertex with no edge going down.")
def raise_cmd(file, vertex):
    """Raise a vertex by two levels."""
    A = _load_adinkra(file)
    _require_valid(A)
    _require_vertex(A, vertex)
    try:
        _emit_adinkra(ak.raise_vertex(A, vertex))
    except ak.AdinkraError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None


@main.command()
@click.argument("file")
def valise(file):
    """Fold the Adinkra onto heights 0 and 1."""
    A = _load_adinkra(file)
    _require_valid(A)
    _emit_adinkra(ak.valise_of(A))


@main.command()
@click.argument("first")
@click.argument("second")
def tensor(first, second):
    """Graph tensor product of two Adinkras."""
    A, B = _load_adinkra(first), _load_adinkra(second)
    _require_valid(A)
    _require_valid(B)
    _emit_adinkra(ak.graph_tensor(A, B))


@main.command("cone-raise")
@click.argument("file")
@click.option("--vertex", required=True)
@click.option("--certify", is_flag=True, help="Compare cohomology with the raised Adinkra.")
@click.option("--max-degree", "max_degree", type=int, default=8, show_default=True)
def cone_raise(file, vertex, certify, max_degree):
    """Mapping cone of j : R/q -> C(A) at a raisable vertex."""
    A = _load_adinkra(file)
    _require_valid(A)
    _require_vertex(A, vertex)
    try:
        res = cx.cone_of_raise(A, vertex, certify=certify, max_degree=max_degree)
    except ak.AdinkraError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None
    doc = fm.complex_to_json(res.complex)
    if res.certificate is not None:
        doc["certificate"] = {"ok": res.certificate.ok, "max_degree": max_degree,
                              "summary": res.certificate.summary()}
    click.echo(fm.dumps(doc), nl=False)
    if res.certificate is not None and not res.certificate.ok:
        sys.exit(EXIT_INVALID)


@main.command("embed-koszul")
@click.argument("file")
def embed_koszul(file):
    """Chain map into the Koszul complex of a fully extended Adinkra."""
    A = _load_adinkra(file)
    _require_valid(A)
    try:
        f = cx.embed_into_koszul(A)
    except ak.PreconditionError as exc:
        click.echo(fm.dumps({"embedded": False, "reason": str(exc),
                             "zero_modes": ak.zero_mode_vertices(A)}), nl=False)
        sys.exit(EXIT_HYPOTHESIS)
    except ak.AdinkraError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None
    bad = cx.injectivity_failures(f)
    doc = fm.chain_map_to_json(f)
    doc["injective"] = not bad
    click.echo(fm.dumps(doc), nl=False)
    if bad:
        sys.exit(EXIT_HYPOTHESIS)


@main.group("code")
def code_group():
    """Doubly-even codes and their Adinkras."""


def _load_code(codefile, builtin_name) -> codes.BinaryCode:
    if (codefile is None) == (builtin_name is None):
        raise Abort("give exactly one of CODEFILE or --builtin", EXIT_USAGE)
    try:
        if builtin_name is not None:
            return codes.builtin(builtin_name)
        p = Path(codefile)
        if not p.is_file():
            raise Abort(f"no such code file: {codefile}", EXIT_USAGE)
        return codes.read_code(p)
    except codes.CodeError as exc:
        raise Abort(str(exc), EXIT_SCHEMA) from None


_BUILTIN_HELP = "Built-in code: " + ", ".join(codes.BUILTIN_NAMES) + " (t<k> and sums like t1+e8 allowed)."


@code_group.command("rank-seq")
@click.argument("codefile", required=False)
@click.option("--builtin", "builtin_name", help=_BUILTIN_HELP)
@click.option("--method", type=click.Choice(["enumerate", "bfs"]), default="enumerate", show_default=True)
def code_rank_seq(codefile, builtin_name, method):
    """Rank sequence of the quotient cube graded by coset weight."""
    code = _load_code(codefile, builtin_name)
    try:
        seq = codes.coset_rank_sequence(code, method)
    except codes.GuardError as exc:
        raise Abort(str(exc), EXIT_GUARD) from None
    except codes.CodeError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None
    click.echo(",".join(str(r) for r in seq.ranks))


@code_group.command("to-adinkra")
@click.argument("codefile", required=False)
@click.option("--builtin", "builtin_name", help=_BUILTIN_HELP)
def code_to_adinkra(codefile, builtin_name):
    """AdinkraDocument whose topology is indexed by the code."""
    code = _load_code(codefile, builtin_name)
    try:
        _emit_adinkra(codes.code_to_adinkra(code))
    except codes.GuardError as exc:
        raise Abort(str(exc), EXIT_GUARD) from None
    except (codes.CodeError, ak.AdinkraError) as exc:
        raise Abort(str(exc), EXIT_INVALID) from None


def _fmt_matrix(m) -> str:
    cells = [[str(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)


@main.command()
@click.argument("file")
@click.option("--irreducible", is_flag=True, help="Compare the rank with the irreducible dimension.")
def clifford(file, irreducible):
    """Clifford generators of a valise and the relation check."""
    A = _load_adinkra(file)
    _require_valid(A)
    try:
        mf = cx.valise_mf(A)
    except ak.AdinkraError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None
    try:
        action = cl.clifford_action(mf)
    except ValueError as exc:
        raise Abort(str(exc), EXIT_INVALID) from None
    for name, g in zip(_names(A), action.generators):
        click.echo(f"f[{name}] =")
        click.echo(_fmt_matrix(g))
    click.echo(f"Clifford relations hold on k^{action.size}")
    if irreducible:
        sig = A.signature
        if sig.n_mu or sig.n_rho:
            raise Abort("irreducibility is tabulated for pure-lambda signatures", EXIT_USAGE)
        dim, nu = cl.irreducible_dim(sig.n_lambda)
        ok = cl.is_irreducible(mf)
        click.echo(f"rank {mf.rank}; irreducible dimension {dim} ({nu} classes); "
                   f"{'irreducible' if ok else 'reducible'}")


@main.command("betti-n4")
@click.option("--n", "twist", type=int, required=True, help="Twist n >= 0 of O(n+d, d).")
@click.option("--max-degree", "max_degree", type=int, default=8, show_default=True)
def betti_n4(twist, max_degree):
    """Linear Betti numbers and Hilbert function of sum_d H^0(O(n+d, d))."""
    if twist < 0:
        raise Abort("--n must be nonnegative", EXIT_USAGE)
    M = co.line_bundle_module(twist, max_degree)
    b = co.betti_linear(M)
    want = (twist + 1, 2 * twist, twist - 1) if twist else (1, 0, 0)
    click.echo("betti " + ",".join(map(str, b.betti)) + f" (expected {','.join(map(str, want))})")
    agree = True
    click.echo("d,dim,formula,series")
    for d in range(max_degree + 1):
        row = (M.dim(d), co.hilb_formula(twist, d), co.hilb_closed_form_coefficient(twist, d))
        agree &= len(set(row)) == 1
        click.echo(f"{d}," + ",".join(map(str, row)))
    if tuple(b.betti) != want or not agree:
        sys.exit(EXIT_INVALID)


@main.command()
@click.argument("file")
def dot(file):
    """Graphviz DOT source for the Adinkra."""
    click.echo(fm.to_dot(_load_adinkra(file)), nl=False)


@main.command()
@click.argument("file")
@click.option("--max-degree", "max_degree", type=int, default=4, show_default=True)
@click.pass_context
def report(ctx, file, max_degree):
    """One-page summary: validity, ranks, zero modes, Laplacian and cohomology."""
    A = _load_adinkra(file)
    valid = ak.validate_any(A)
    if not valid.ok:
        click.echo(valid.summary())
        sys.exit(EXIT_INVALID)
    C = cx.complex_of(A)
    lap = cx.check_laplacian(C)
    mark = "✓" if lap.ok else "✗"
    click.echo(f"valid; {ak.rank_sequence(A)}; zero modes {ak.zero_modes(A)}; "
               f"Δ={_q_label(A.signature)}·id {mark}")
    if A.name:
        click.echo(f"name: {A.name}")
    D = max(max_degree, C.max_shift())
    prof = co.hilbert_profile(C, D)
    click.echo(f"cohomology H^n(C)_d, d = {prof.min_degree}..{D}:")
    click.echo(prof.to_csv(), nl=False)
    seed = ctx.obj.get("seed") if ctx.obj else None
    if seed is not None:
        same = co.hilbert_profile(co.random_basis_change(C, seed), D) == prof
        click.echo(f"basis change (seed {seed}): profile {'unchanged' if same else 'CHANGED'}")
        if not same:
            sys.exit(EXIT_INVALID)
    if not lap.ok:
        click.echo(lap.summary())
        sys.exit(EXIT_INVALID)


@main.command("chain-map")
@click.argument("file")
def chain_map_cmd(file):
    """Verify a chain_map document and print the ranks of its cone."""
    raw = _load_raw(file)
    try:
        f = fm.chain_map_from_json(raw)
    except fm.FormatError as exc:
        raise Abort(str(exc), EXIT_SCHEMA) from None
    rep = cx.check_chain_map(f)
    if not rep.ok:
        click.echo(f"not a chain map: {rep.problems[0]}")
        sys.exit(EXIT_INVALID)
    cn = cx.cone(f)
    click.echo("chain map ok")
    click.echo("source ranks " + json.dumps(f.source.ranks()))
    click.echo("target ranks " + json.dumps(f.target.ranks()))
    click.echo("cone ranks " + json.dumps(cn.ranks()) + f"; d^2 = 0: {cn.is_complex()}")


if __name__ == "__main__":
    main()
