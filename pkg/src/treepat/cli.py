import json
from pathlib import Path

import click
from click_default_group import DefaultGroup

from .classify import DEFAULT_PREFIX, incomparable_pairs, single_patterns, wilf_classify
from .config import (
    _config_get,
    _env_first,
    configure_logging,
    load_settings,
    resolve_config_with_provenance,
)
from .engine import GFEngine, PatternSet, canonical_set, gf_closed_form, gf_set
from .errors import ConfigError, PermutationError, TreepatError, TreeSyntaxError
from .formats import OutputFormat, gf_report, render_classes, render_gf_report, render_sequence
from .gentree import build_gentree_table, comb_recurrence
from .matcher import Containment
from .oeis import MIN_TERMS, OeisClient
from .oracle import avoiders, count_avoiders, sequence_brute
from .perms import (
    Permutation,
    avoidance_sequence,
    count_avoiding_perms,
    perm_to_tree,
    search_pattern_sets,
    tree_to_perm,
)
from .ratfun import growth_rate, series
from .trees import Tree, enumerate_trees, left_comb, parse_tree, render_tree, tree_label

USAGE_EXIT = 1
COMPUTATION_EXIT = 2

_COUNTEREXAMPLE_TARGET = "1,2,5,12,26,49,83,129"


class ComputationError(click.ClickException):
    """A library computation failed after the arguments were accepted."""

    exit_code = COMPUTATION_EXIT


class TreepatGroup(DefaultGroup):
    """Root group: usage errors exit 1, computation errors exit 2."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as exc:
            exc.exit_code = USAGE_EXIT
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = USAGE_EXIT
            raise
        except ConfigError as exc:
            raise click.ClickException(str(exc)) from exc
        except TreepatError as exc:
            raise ComputationError(str(exc)) from exc


class TreeParamType(click.ParamType):
    name = "tree"

    def convert(self, value, param, ctx):
        if isinstance(value, Tree):
            return value
        try:
            return parse_tree(value)
        except TreeSyntaxError as exc:
            self.fail(f"malformed tree literal {value!r}: {exc.message} at offset {exc.offset}", param, ctx)


class PermutationParamType(click.ParamType):
    name = "permutation"

    def convert(self, value, param, ctx):
        if isinstance(value, Permutation):
            return value
        try:
            return Permutation.parse(value)
        except PermutationError as exc:
            self.fail(str(exc), param, ctx)


TREE = TreeParamType()
PERMUTATION = PermutationParamType()

_FORMAT_OPTION = click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    default=OutputFormat.PLAIN.value,
    show_default=True,
    help="Output format.",
)


def _settings():
    root = click.get_current_context().find_root()
    root.ensure_object(dict)
    if "settings" not in root.obj:
        root.obj["settings"] = load_settings(project_root=Path.cwd())
    return root.obj["settings"]


def _terms(terms):
    return terms if terms is not None else _settings().terms


def _workers(workers):
    return workers if workers is not None else _settings().workers


def _oeis_client(offline: bool) -> OeisClient:
    settings = _settings()
    return OeisClient(
        url=settings.oeis_url,
        timeout=settings.oeis_timeout,
        cache_path=settings.oeis_cache,
        offline=offline or settings.oeis_offline,
    )


def _mode(contiguous: bool) -> Containment:
    return Containment.CONTIGUOUS if contiguous else Containment.NONCONTIGUOUS


def _format_recurrence(coeffs: list[int], start: int) -> str:
    parts = []
    for lag, c in enumerate(coeffs, start=1):
        term = f"a(n-{lag})" if abs(c) == 1 else f"{abs(c)}a(n-{lag})"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {term}")
    return "a(n) = " + " ".join(parts) + f" for n >= {start}"


@click.group(cls=TreepatGroup, default="gf", default_if_no_args=False)
@click.version_option(None, "--version", package_name="treepat")
@click.option(
    "-v",
    "--verbose",
    count=True,
    help="Increase log verbosity (repeatable).",
)
@click.option(
    "--log-file",
    type=click.Path(),
    help="Write logs to a file (or set TREEPAT_LOG_DIR).",
)
def cli(verbose, log_file):
    """Count and classify full binary trees that avoid tree patterns."""
    log_path = Path(log_file) if log_file else None
    if log_path is None:
        log_dir = _env_first("TREEPAT_LOG_DIR")
        if log_dir:
            log_path = Path(log_dir) / "treepat.log"
    configure_logging(verbosity=verbose, log_file=log_path)


@cli.command("enumerate")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of leaves.")
@click.option("--avoid", "patterns", type=TREE, multiple=True, help="Only list trees avoiding this pattern.")
@click.option("--contiguous", is_flag=True, help="Use contiguous containment for --avoid.")
@click.option("--count", "count_only", is_flag=True, help="Print only how many trees qualify.")
@click.option("--max-height", type=click.IntRange(min=0), help="Only list trees of at most this height.")
def enumerate_cmd(n, patterns, contiguous, count_only, max_height):
    """List n-leaf trees in canonical order with their k_j labels."""
    trees = list(avoiders(n, patterns, _mode(contiguous))) if patterns else enumerate_trees(n)
    if max_height is not None:
        trees = [t for t in trees if t.height <= max_height]
    if count_only:
        click.echo(len(trees))
        return
    for tree in trees:
        click.echo(f"{tree_label(tree)} {render_tree(tree)}")


@cli.command("gf")
@click.option("--pattern", "patterns", type=TREE, multiple=True, help="Pattern tree literal (repeatable).")
@click.option("--leaves", type=click.IntRange(min=1), help="Use the closed form shared by all k-leaf patterns.")
@click.option("--terms", type=click.IntRange(min=1), help="Number of terms a(1)..a(N) [default: 15].")
@_FORMAT_OPTION
@click.option("--no-minimize", is_flag=True, help="Keep patterns that contain other patterns.")
@click.option("--oeis", "with_oeis", is_flag=True, help="Look the sequence up in the OEIS.")
@click.option("--offline", is_flag=True, help="Only consult the local OEIS caches.")
def gf_cmd(patterns, leaves, terms, fmt, no_minimize, with_oeis, offline):
    """Print the avoidance generating function and its first terms."""
    if bool(patterns) == (leaves is not None):
        raise click.UsageError("give either --pattern (one or more) or --leaves")
    terms = _terms(terms)
    if leaves is not None:
        pattern_set = PatternSet((left_comb(leaves),))
        gf = gf_closed_form(leaves)
    else:
        engine = GFEngine(minimize=not no_minimize)
        pattern_set = canonical_set(patterns, minimize=not no_minimize)
        gf = gf_set(pattern_set, engine=engine)
    sequence = series(gf, terms)[1:]
    oeis_ids = []
    if with_oeis:
        if len(sequence) < MIN_TERMS:
            raise click.UsageError(f"--oeis needs --terms of at least {MIN_TERMS}")
        oeis_ids = _oeis_client(offline).annotate(sequence)
    report = gf_report(pattern_set, gf, sequence, growth_rate(gf), oeis_ids)
    click.echo(render_gf_report(report, fmt), nl=False)


@cli.command("sequence")
@click.option("--pattern", "patterns", type=TREE, multiple=True, required=True, help="Pattern tree literal.")
@click.option("--terms", type=click.IntRange(min=1), help="Number of terms a(1)..a(N) [default: 15].")
@click.option(
    "--method",
    type=click.Choice(["gf", "oracle"]),
    default="gf",
    show_default=True,
    help="Expand the generating function or count by brute force.",
)
@click.option("--contiguous", is_flag=True, help="Contiguous avoidance (oracle only).")
@click.option("--workers", type=click.IntRange(min=1), help="Processes for --method oracle.")
@_FORMAT_OPTION
def sequence_cmd(patterns, terms, method, contiguous, workers, fmt):
    """Print the avoidance sequence a(1)..a(N)."""
    if contiguous and method == "gf":
        raise click.UsageError("contiguous avoidance has no generating function here; use --method oracle")
    terms = _terms(terms)
    if method == "gf":
        sequence = series(gf_set(patterns), terms)[1:]
    else:
        sequence = sequence_brute(terms, patterns, _mode(contiguous), workers=_workers(workers))
    click.echo(render_sequence(sequence, fmt), nl=False)


@cli.command("oracle")
@click.option("--pattern", "patterns", type=TREE, multiple=True, required=True, help="Pattern tree literal.")
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of leaves.")
@click.option("--contiguous", is_flag=True, help="Use contiguous containment.")
def oracle_cmd(patterns, n, contiguous):
    """Count n-leaf avoiders by exhaustive enumeration."""
    click.echo(count_avoiders(n, patterns, _mode(contiguous)))


@cli.command("classify")
@click.option(
    "--leaves",
    type=click.IntRange(min=1, max=6),
    multiple=True,
    required=True,
    help="Leaf count of single patterns, or give it twice for incomparable pairs.",
)
@click.option("--terms", type=click.IntRange(min=1), default=DEFAULT_PREFIX, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice([OutputFormat.PLAIN.value, OutputFormat.JSON.value, OutputFormat.CSV.value]),
    default=OutputFormat.PLAIN.value,
    show_default=True,
)
def classify_cmd(leaves, terms, fmt):
    """Group single patterns or incomparable pairs into Wilf classes."""
    if len(leaves) == 1:
        sets = single_patterns(leaves[0])
    elif len(leaves) == 2:
        sets = incomparable_pairs(leaves[0], leaves[1])
    else:
        raise click.UsageError("--leaves takes one value (singles) or two values (pairs)")
    if not sets:
        click.echo("no incomparable pairs", err=True)
        return
    click.echo(render_classes(wilf_classify(sets, terms), fmt), nl=False)


@cli.command("gentree")
@click.option("--k", "k", type=click.IntRange(min=3), required=True, help="Leaves of the avoided left comb.")
@click.option("--terms", type=click.IntRange(min=1), help="Number of terms a(1)..a(N) [default: 15].")
@click.option("--table", "show_table", is_flag=True, help="Also print a(n,i) by descendant count.")
@click.option("--recurrence", "show_recurrence", is_flag=True, help="Also print the linear recurrence.")
def gentree_cmd(k, terms, show_table, show_recurrence):
    """Count comb avoiders with the generating-tree succession rule."""
    table = build_gentree_table(k, _terms(terms))
    click.echo(",".join(str(v) for v in table.sums()))
    if show_table:
        for n, row in enumerate(table.rows, start=1):
            click.echo(f"{n}: " + " ".join(str(v) for v in row))
    if show_recurrence:
        click.echo(_format_recurrence(*comb_recurrence(k)))


@cli.group("perm")
def perm_cli():
    """Translate between trees and 231-avoiding permutations."""
    pass


@perm_cli.command("encode")
@click.argument("tree", type=TREE)
def perm_encode_cmd(tree):
    """Print the 231-avoiding permutation of a tree."""
    click.echo(str(tree_to_perm(tree)))


@perm_cli.command("decode")
@click.argument("permutation", type=PERMUTATION)
def perm_decode_cmd(permutation):
    """Print the tree of a 231-avoiding permutation."""
    click.echo(render_tree(perm_to_tree(permutation)))


@perm_cli.command("count")
@click.option("--n", "n", type=click.IntRange(min=0, max=10), required=True, help="Permutation length.")
@click.option("--avoid", "patterns", type=PERMUTATION, multiple=True, help="Pattern to avoid (repeatable).")
def perm_count_cmd(n, patterns):
    """Count permutations of length n avoiding every pattern."""
    click.echo(count_avoiding_perms(n, patterns))


@perm_cli.command("sequence")
@click.option("--terms", type=click.IntRange(min=1, max=10), required=True, help="Counts for lengths 1..N.")
@click.option("--avoid", "patterns", type=PERMUTATION, multiple=True, help="Pattern to avoid (repeatable).")
def perm_sequence_cmd(terms, patterns):
    """Print avoidance counts for permutation lengths 1..N."""
    click.echo(",".join(str(v) for v in avoidance_sequence(terms, patterns)))


@perm_cli.command("search")
@click.option("--target", default=_COUNTEREXAMPLE_TARGET, show_default=True, help="Counts for lengths 1, 2, ...")
@click.option("--workers", type=click.IntRange(min=1), help="Processes to spread the search over.")
def perm_search_cmd(target, workers):
    """Search {length-3, length-4, length-4} pattern sets for a target sequence."""
    try:
        values = [int(v) for v in target.split(",")]
    except ValueError:
        raise click.BadParameter("expected comma-separated integers", param_hint="--target") from None
    matches = search_pattern_sets(values, workers=_workers(workers))
    if not matches:
        click.echo("no matching pattern set")
    for match in matches:
        click.echo(" ".join(str(p) for p in match))


def _parse_terms(values) -> list[int]:
    terms = []
    for value in values:
        for part in value.replace(",", " ").split():
            try:
                terms.append(int(part))
            except ValueError:
                raise click.BadParameter(f"{part!r} is not an integer", param_hint="SEQUENCE") from None
    return terms


@cli.command("annotate")
@click.argument("sequence", nargs=-1, required=True)
@click.option("--offline", is_flag=True, help="Only consult the local OEIS caches.")
def annotate_cmd(sequence, offline):
    """Print OEIS ids matching a sequence (comma- or space-separated)."""
    terms = _parse_terms(sequence)
    if len(terms) < MIN_TERMS:
        raise click.UsageError(f"need at least {MIN_TERMS} terms, got {len(terms)}")
    for oeis_id in _oeis_client(offline).annotate(terms):
        click.echo(oeis_id)


@cli.group("config")
def config_cli():
    """Inspect resolved configuration."""
    pass


@config_cli.command("show")
@click.option("--project-root", help="Directory holding .treepat.toml (defaults to the current directory).")
@click.option("--json", "as_json", is_flag=True, help="Output resolved config as JSON.")
def config_show_cmd(project_root, as_json):
    """Show resolved configuration values and their provenance."""
    root = Path(project_root).resolve() if project_root else Path.cwd().resolve()
    resolved, provenance = resolve_config_with_provenance(project_root=root)
    if as_json:
        click.echo(json.dumps({"resolved": resolved, "provenance": provenance}, indent=2, ensure_ascii=False))
        return
    click.echo(f"Config (project_root={root}):")
    for key in sorted(provenance.keys()):
        value = _config_get(resolved, key)
        click.echo(f"  {key} = {value!r}  [{provenance[key]}]")
