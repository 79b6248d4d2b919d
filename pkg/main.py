import argparse
import logging
import random
import sys
from typing import List, Optional

from hamming_partitions import (
    BuildContext,
    CodePartition,
    ExtendedPartition,
    MollardFrame,
    ReportFormat,
    VerifyMode,
    candidate_hamming_codes,
    exhaustive_automorphisms,
    extend_partition,
    import_verified,
    invariant_signature,
    load_toolkit_config,
    parse_recipe,
    puncture_partition,
    read_partition,
    uniform_search,
    uniformity,
    verify_partition,
    write_partition,
)
from hamming_partitions.drivers import (
    ChainStatus,
    corollary_counts,
    lemma3_chains,
    render,
    theorem_table,
)
from hamming_partitions.partition_file import read_any
from hamming_partitions.partitions import code_blocks
from hamming_partitions.recipes import RecipeMismatchError, build_and_certify
from hamming_partitions.symmetry import (
    lifted_automorphisms,
    reduce_generators,
    trivial_automorphisms,
    two_transitive,
)

logger = logging.getLogger(__name__)


def _imports(paths: Optional[List[str]], cfg):
    return [import_verified(p, config=cfg.verification) for p in (paths or [])]


def cmd_build(args, cfg) -> int:
    ctx = BuildContext(cfg)
    for imported in _imports(args.imports, cfg):
        ctx.add_import(imported)
    outcome = build_and_certify(parse_recipe(args.recipe), ctx)
    print(f"{outcome.recipe}: n={outcome.partition.length}, {outcome.report.describe()}, predicted {outcome.predicted}")
    if args.output:
        write_partition(outcome.partition, args.output)
    return 0


def cmd_verify(args, cfg) -> int:
    partition = read_any(args.file)
    mode = VerifyMode.BOTH if args.exhaustive else cfg.verification.mode
    cert = verify_partition(partition, mode, cfg.verification)
    print(cert.describe())
    return 0 if cert.valid else 1


def cmd_uniformity(args, cfg) -> int:
    partition = read_any(args.file)
    report = uniformity(partition, cfg.verification)
    print(report.describe())
    print("signature: " + " ".join(f"{v}x{c}" for v, c in invariant_signature(partition, cfg.verification)))
    return 0


def cmd_aut(args, cfg) -> int:
    partition = read_partition(args.file)
    sym = cfg.symmetry
    if args.exhaustive:
        found = reduce_generators(exhaustive_automorphisms(
            partition, sym.exhaustive_max_length, cfg.verification.parallel_workers))
    elif args.lift:
        left, right = (read_partition(p) for p in args.lift)
        frame = MollardFrame(left.length, right.length)
        if frame.n != partition.length:
            raise ValueError(f"component lengths {left.length}, {right.length} do not compose to {partition.length}")
        found = lifted_automorphisms([iso for iso, _ in _seed_automorphisms(left, cfg)],
                                     [iso for iso, _ in _seed_automorphisms(right, cfg)],
                                     frame, partition, confirm=sym.lift_confirm)
    elif len(code_blocks(partition)) == 1:
        found = trivial_automorphisms(partition)
    else:
        raise ValueError("choose --exhaustive or --lift LEFT RIGHT for partitions with several codes")
    for iso, action in found:
        print(f"perm={list(iso.perm)} shift={iso.shift} index={list(action.mapping)}")
    cert = two_transitive([a for _, a in found], partition.length)
    print(cert.describe())
    return 0 if cert.two_transitive else 1


def _seed_automorphisms(partition: CodePartition, cfg):
    if len(code_blocks(partition)) == 1:
        return trivial_automorphisms(partition)
    return reduce_generators(exhaustive_automorphisms(
        partition, cfg.symmetry.exhaustive_max_length, cfg.verification.parallel_workers))


def cmd_theorem_table(args, cfg) -> int:
    rows = theorem_table(args.m, _imports(args.imports, cfg), cfg)
    print(render([r.as_record() for r in rows], args.format))
    return 0


def cmd_lemma3(args, cfg) -> int:
    steps = lemma3_chains(_imports(args.imports, cfg), cfg)
    print(render([s.as_record() for s in steps], args.format))
    return 1 if any(s.status == ChainStatus.NOT_UNIFORM for s in steps) else 0


def cmd_counts(args, cfg) -> int:
    report = corollary_counts(args.m, _imports(args.imports, cfg), cfg)
    print(render([e.as_record() for e in report.entries], args.format))
    print(render([report.summary()], args.format))
    return 0 if report.met else 1


def cmd_extend(args, cfg) -> int:
    extended = extend_partition(read_partition(args.file))
    cert = verify_partition(extended, config=cfg.verification)
    print(f"extended to length {extended.length}: {cert.describe()}")
    write_partition(extended, args.output)
    return 0 if cert.valid else 1


def cmd_puncture(args, cfg) -> int:
    source = read_any(args.file)
    if not isinstance(source, ExtendedPartition):
        raise ValueError(f"{args.file} is not a parity-extended partition")
    punctured = puncture_partition(source, args.position)
    cert = verify_partition(punctured, config=cfg.verification)
    print(f"punctured to length {punctured.length}: {cert.describe()}")
    write_partition(punctured, args.output)
    return 0 if cert.valid else 1


def cmd_phelps_search(args, cfg) -> int:
    search = cfg.search
    budget = args.budget or search.node_budget
    codes = candidate_hamming_codes(args.m, search.sample_codes, rng=random.Random(search.seed))
    result = uniform_search(args.m, args.dim, search.phelps_limit, budget, codes)
    for k, partition in enumerate(result.partitions):
        print(f"#{k}: {uniformity(partition, cfg.verification).describe()}")
    print(result.describe())
    if result.partitions and args.output:
        write_partition(result.partitions[0], args.output)
    if result.partitions:
        return 0
    # 3: budget spent before any verdict
    return 3 if result.budget_exhausted else 1


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "uniformity": cmd_uniformity,
    "aut": cmd_aut,
    "theorem-table": cmd_theorem_table,
    "lemma3": cmd_lemma3,
    "counts": cmd_counts,
    "extend": cmd_extend,
    "puncture": cmd_puncture,
    "phelps-search": cmd_phelps_search,
}


def cli(argv: Optional[List[str]] = None):
    parser = argparse.ArgumentParser(description="Partitions of F^n into cosets of Hamming codes")
    parser.add_argument("--config", default=None, help="JSON config, e.g. config/sample_config.json")
    parser.add_argument("--profile", default=None, help="Named profile inside the config file")
    parser.add_argument("--verbose", action="store_true")
    parser.add_argument("--format", type=ReportFormat, default=ReportFormat.TABLE,
                        choices=list(ReportFormat), help="table or records")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="Build a recipe such as B(T3,P7) and certify it")
    p.add_argument("recipe")
    p.add_argument("-o", "--output")
    p.add_argument("--import", dest="imports", action="append", metavar="FILE")

    p = sub.add_parser("verify", help="Certify a partition file")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true", help="Also scan every vector (small n)")

    p = sub.add_parser("uniformity", help="Uniformity report and invariant signature")
    p.add_argument("file")

    p = sub.add_parser("aut", help="Automorphism generators and 2-transitivity")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--lift", nargs=2, metavar=("LEFT", "RIGHT"))

    p = sub.add_parser("theorem-table", help="Uniformity numbers predicted for one m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--import", dest="imports", action="append", metavar="FILE")

    p = sub.add_parser("lemma3", help="Chains through lengths 31, 127, 255, 1023")
    p.add_argument("--import", dest="imports", action="append", metavar="FILE")

    p = sub.add_parser("counts", help="Nonequivalent and 2-transitive uniform partitions for one m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--import", dest="imports", action="append", metavar="FILE")

    p = sub.add_parser("extend", help="Parity-extend a partition file")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("puncture", help="Puncture a parity-extended partition file")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--position", type=int, default=None)

    p = sub.add_parser("phelps-search", help="Search partitions with uniform code intersections")
    p.add_argument("--m", type=int, default=3, choices=[2, 3, 4],
                   help="Length 2^m-1; exhaustive up to m=3, sampled codes at m=4")
    p.add_argument("--dim", type=int, required=True, help="Target pairwise intersection dimension")
    p.add_argument("--budget", type=int, default=None, help="Node budget (default from config)")
    p.add_argument("-o", "--output")
    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = cli(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s:%(lineno)d %(message)s')
    try:
        cfg = load_toolkit_config(args.config, args.profile)
        return COMMANDS[args.command](args, cfg)
    except (FileNotFoundError, ValueError, RecipeMismatchError) as e:
        logger.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
