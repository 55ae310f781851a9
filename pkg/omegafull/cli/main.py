# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from tqdm import tqdm

from omegafull.analysis import L_formula, L_max, growth_ratio, maximize_h, michel_baseline
from omegafull.automata import (
    AcceptanceKind,
    AutomatonError,
    LassoWord,
    determinize_nfw,
    enumerate_lassos,
    intersect_empty,
    lasso_member,
    word_member,
)
from omegafull.cli.errors import FormatError
from omegafull.cli.hoa import export_hoa, import_hoa
from omegafull.cli.io import (
    automaton_to_json,
    certificate,
    emit,
    load_automaton,
    load_word,
    word_to_json,
)
from omegafull.complement import complement_rank, count_tight
from omegafull.full import Equivalence, gen_fa, nfw_witness, substitute_ab, u_word, v_word, word_equiv
from omegafull.nbw import (
    ConfusionWitness,
    QRanking,
    concatenation_property,
    confuse,
    count_q_rankings,
    fb_as_type,
    gamma,
    gen_b,
    gen_fb,
    hard_word,
    random_chains,
    translate_gamma,
    w_word,
    wfg_properties,
)
from omegafull.ngbw import (
    PGCLRanking,
    acc_of,
    certify_conflict_set,
    check_seg_properties,
    count_pgcl,
    gen_fb_nk,
    pgcl_enumerate,
    pgcl_lower_bound,
    seg_word,
)
from omegafull.utils.config import setup

logger = logging.getLogger("omegafull")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2


def _ints(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config-file", default="", metavar="FILE", help="path to config file")
    parser.add_argument(
        "--output-dir",
        "--output_dir",
        default="",
        type=str,
        help="Output directory to save logs and the resolved config",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed of every randomized check")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument(
        "--opts",
        help='Modify config options, as space-separated "path.key=value" pairs.',
        default=[],
        nargs="*",
    )
    return parser


def get_args_parser(add_help: bool = True):
    parser = argparse.ArgumentParser("omegafull", add_help=add_help)
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    def group(name: str, help: str):
        sub = commands.add_parser(name, help=help)
        return sub.add_subparsers(dest="action", required=True)

    def leaf(actions, name: str, help: str, *flags: str):
        sub = actions.add_parser(name, help=help, parents=[common])
        if "n" in flags:
            sub.add_argument("--n", type=int, default=None, help="state count")
        if "k" in flags:
            sub.add_argument("--k", type=int, default=None, help="number of generalized Büchi sets")
        if "out" in flags:
            sub.add_argument("--out", default="", help="output file (stdout when omitted)")
        if "automaton" in flags:
            sub.add_argument("--automaton", required=True, help="roa/hoa file or description such as FB:n=3")
        if "format" in flags:
            sub.add_argument("--format", default=None, choices=["roa", "hoa"])
        return sub

    gen = group("gen", "generate automata")
    leaf(gen, "fa", "FA_n", "n", "out", "format")
    sub = leaf(gen, "fb", "FB_n", "n", "out", "format")
    sub.add_argument("--type", default=None, choices=[str(k) for k in AcceptanceKind if k != AcceptanceKind.FINAL])
    leaf(gen, "b", "B_n over the seven Γ letters", "n", "out", "format")
    leaf(gen, "gamma", "the Γ letters", "n", "out")
    leaf(gen, "fbnk", "FB_{n,k}", "n", "k", "out", "format")

    word = group("word", "generate words")
    sub = leaf(word, "hard", "the hard lasso of FB_n", "n", "out")
    sub.add_argument("--gamma", action="store_true", help="translate into Γ letters")
    sub = leaf(word, "wfg", "w_{f,g} for two Q(m)-rankings", "n", "out")
    sub.add_argument("--f", type=_ints, required=True)
    sub.add_argument("--g", type=_ints, required=True)
    sub = leaf(word, "seg", "seg_{f,g} for a PGCL-ranking", "n", "k", "out")
    sub.add_argument("--f", type=_ints, required=True, help="ranks 1..n-1 per main state")
    sub.add_argument("--g", type=_ints, required=True, help="1-based set index per main state")
    sub = leaf(word, "fooling", "u_T1 v_T2 fooling word of FA_n", "n", "out")
    sub.add_argument("--t1", type=_ints, default=[])
    sub.add_argument("--t2", type=_ints, default=[])
    sub.add_argument("--ab", action="store_true", help="use the two-letter alphabet {a, b}")

    check = group("check", "membership and property checks")
    sub = leaf(check, "member", "word membership", "automaton")
    sub.add_argument("--word", required=True)
    sub = leaf(check, "equiv", "word equivalence", "automaton")
    sub.add_argument("--left", required=True)
    sub.add_argument("--right", required=True)
    sub.add_argument("--mode", default="sim", choices=[str(e) for e in Equivalence])
    leaf(check, "seg-props", "seg word properties", "n", "k")
    sub = leaf(check, "wfg-props", "w-word properties", "n")
    sub.add_argument("--chains", type=int, default=20, help="random ranking chains for the concatenation check")

    complement = group("complement", "complementation")
    sub = leaf(complement, "rank", "rank-based complement", "automaton", "out")
    sub.add_argument("--tight", action="store_true", default=None)

    verify = group("verify", "certificates")
    sub = leaf(verify, "complement", "check a candidate complement", "automaton", "out")
    sub.add_argument("--candidate", required=True)
    sub.add_argument("--bound", type=int, default=None, help="lasso size bound |u| + |v|")
    sub = leaf(verify, "confuse", "refute a small candidate complement of FB_n", "n", "out")
    sub.add_argument("--candidate", required=True)
    sub = leaf(verify, "conflict-set", "certify the seg conflict set of FB_{n,k}", "n", "k", "out")
    sub.add_argument("--grid", type=_ints, default=None)
    sub.add_argument("--exponents", type=_ints, default=None, help="single k0,k1,k2 triple")
    leaf(verify, "fooling", "NFW fooling set of FA_n", "n", "out")

    count = group("count", "counting")
    sub = leaf(count, "qrank", "Q(m)-rankings", "n")
    sub.add_argument("--m", type=int, required=True)
    leaf(count, "pgcl", "PGCL-rankings", "n", "k")
    leaf(count, "tight", "tight level rankings", "n")
    leaf(count, "L", "L(n) = max_m L(n, m)", "n")

    analyze = group("analyze", "numerics")
    sub = leaf(analyze, "asymptotic", "maximize h and compare with exact counts")
    sub.add_argument("--grid-step", type=float, default=None)
    sub.add_argument("--growth-n", type=int, default=None)

    export = group("export", "interchange formats")
    leaf(export, "hoa", "write HOA", "automaton", "out")
    imports = group("import", "interchange formats")
    sub = leaf(imports, "hoa", "read HOA written by export", "out")
    sub.add_argument("--input", required=True)
    return parser


def _nbw_n(args, cfg) -> int:
    return args.n if args.n is not None else int(cfg.nbw.n)


def _ngbw_nk(args, cfg) -> Tuple[int, int]:
    n = args.n if args.n is not None else int(cfg.ngbw.n)
    k = args.k if args.k is not None else int(cfg.ngbw.k)
    return n, k


def _emit_automaton(automaton, args, cfg) -> int:
    fmt = args.format or str(cfg.export.format)
    emit(export_hoa(automaton) if fmt == "hoa" else automaton_to_json(automaton), args.out)
    return EXIT_OK


def _run_json(run) -> Dict[str, Any]:
    return {"stem": list(run.stem), "loop": list(run.loop)}


def gen_fa_cmd(args, cfg) -> int:
    return _emit_automaton(gen_fa(_nbw_n(args, cfg)), args, cfg)


def gen_fb_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    return _emit_automaton(fb_as_type(n, args.type) if args.type else gen_fb(n), args, cfg)


def gen_fbnk_cmd(args, cfg) -> int:
    return _emit_automaton(gen_fb_nk(*_ngbw_nk(args, cfg)), args, cfg)


def gen_b_cmd(args, cfg) -> int:
    return _emit_automaton(gen_b(_nbw_n(args, cfg)), args, cfg)


def gen_gamma_cmd(args, cfg) -> int:
    letters = gamma(_nbw_n(args, cfg))
    emit({"letters": {name: [list(p) for p in sorted(a.relation)] for name, a in letters.items()}}, args.out)
    return EXIT_OK


def word_hard_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    hard = hard_word(n)
    period = translate_gamma(hard.period, n) if args.gamma else hard.period
    logger.info(f"hard word n={n}: m={hard.m}, {len(hard.rankings)} segments, period length {len(period)}")
    emit(word_to_json((), period), args.out)
    return EXIT_OK


def word_wfg_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    if len(args.f) != n - 1 or len(args.g) != n - 1:
        raise ValueError(f"rankings need {n - 1} ranks each")
    m = (max(args.f + args.g) + 1) // 2
    emit(word_to_json(w_word(QRanking(m, args.f), QRanking(m, args.g)), ()), args.out)
    return EXIT_OK


def word_seg_cmd(args, cfg) -> int:
    n, k = _ngbw_nk(args, cfg)
    acc = acc_of(gen_fb_nk(n, k))
    ranking = PGCLRanking(args.f, [i - 1 for i in args.g])
    emit(word_to_json(seg_word(ranking, acc), ()), args.out)
    return EXIT_OK


def word_fooling_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    t1, t2 = frozenset(args.t1), frozenset(args.t2)
    if not (t1 | t2) <= frozenset(range(n)):
        raise ValueError(f"state sets must lie in 0..{n - 1}")
    if args.ab:
        word = substitute_ab(t1, n) + substitute_ab(frozenset(range(n)) - t2, n)
    else:
        word = u_word(t1) + v_word(t2, n)
    emit(word_to_json(word, ()), args.out)
    return EXIT_OK


def check_member_cmd(args, cfg) -> int:
    automaton = load_automaton(args.automaton)
    prefix, period = load_word(args.word, automaton)
    if period:
        accepted = lasso_member(automaton, LassoWord(prefix, period))
    else:
        accepted = word_member(automaton, prefix)
    print("accepted" if accepted else "rejected")
    return EXIT_OK


def check_equiv_cmd(args, cfg) -> int:
    automaton = load_automaton(args.automaton)
    left, _ = load_word(args.left, automaton)
    right, _ = load_word(args.right, automaton)
    same = word_equiv(automaton, left, right, Equivalence(args.mode))
    print("equivalent" if same else "different")
    return EXIT_OK


def _print_report(report) -> int:
    print(str(report))
    for problem in report.violations[:20]:
        print(f"  {problem}")
    return EXIT_OK if report.holds else EXIT_REFUTED


def check_seg_props_cmd(args, cfg) -> int:
    n, k = _ngbw_nk(args, cfg)
    return _print_report(check_seg_properties(n, k, print_freq=int(cfg.run.print_freq)))


def check_wfg_props_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    code = _print_report(wfg_properties(n, print_freq=int(cfg.run.print_freq)))
    rng = np.random.default_rng(int(cfg.run.seed))
    chains = random_chains(n, args.chains, 4, rng)
    return max(code, _print_report(concatenation_property(n, chains)))


def complement_rank_cmd(args, cfg) -> int:
    automaton = load_automaton(args.automaton)
    tight = bool(cfg.complement.tight) if args.tight is None else args.tight
    result = complement_rank(automaton, tight=tight)
    logger.info(f"complement of {automaton} has {result.n} states")
    emit(automaton_to_json(result), args.out)
    return EXIT_OK


def verify_complement_cmd(args, cfg) -> int:
    automaton = load_automaton(args.automaton)
    candidate = load_automaton(args.candidate)
    bound = args.bound if args.bound is not None else int(cfg.complement.lasso_bound)
    witnesses = []
    empty = None
    if automaton.kind == AcceptanceKind.BUCHI and candidate.kind == AcceptanceKind.BUCHI:
        empty = intersect_empty(automaton, candidate)
        if not empty:
            witnesses.append({"reason": "the languages intersect"})
    lassos = enumerate_lassos(automaton.alphabet(), bound)
    for word in tqdm(lassos, desc="lassos", disable=not cfg.run.progress):
        if lasso_member(automaton, word) == lasso_member(candidate, word):
            witnesses.append({"reason": "membership agrees", "word": word_to_json(word.prefix, word.period)})
            break
    verdict = "refuted" if witnesses else "certified"
    inputs = {"automaton": automaton_to_json(automaton), "candidate": automaton_to_json(candidate)}
    emit(certificate("complement-check", inputs, verdict, witnesses, lasso_bound=bound, disjoint=empty), args.out)
    return EXIT_REFUTED if witnesses else EXIT_OK


def verify_confuse_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    candidate = load_automaton(args.candidate)
    outcome = confuse(candidate, n)
    inputs = {"candidate": automaton_to_json(candidate), "target": f"FB:n={n}"}
    if isinstance(outcome, ConfusionWitness):
        witness = {
            "segments": [outcome.first, outcome.second],
            "state": outcome.state,
            "cut": list(outcome.cut),
            "word": word_to_json(outcome.u, outcome.v),
            "run": _run_json(outcome.run),
        }
    else:
        witness = {"reason": outcome.reason, "word": word_to_json(outcome.word.prefix, outcome.word.period)}
    emit(certificate("confusion", inputs, outcome.verdict, [witness]), args.out)
    if outcome.verdict != "refuted":
        logger.error(f"confusion witness for {candidate} failed its independent check")
        return EXIT_USAGE
    return EXIT_REFUTED


def verify_conflict_set_cmd(args, cfg) -> int:
    n, k = _ngbw_nk(args, cfg)
    automaton = gen_fb_nk(n, k)
    acc = acc_of(automaton)
    words = [seg_word(r, acc) for r in pgcl_enumerate(acc)]
    grid = args.grid if args.grid is not None else list(cfg.ngbw.exponent_grid)
    triples = None
    if args.exponents is not None:
        if len(args.exponents) != 3:
            raise ValueError(f"--exponents takes k0,k1,k2, got {args.exponents}")
        triples = [tuple(args.exponents)]
    result = certify_conflict_set(automaton, words, grid, print_freq=int(cfg.run.print_freq), triples=triples)
    witnesses = [{"pair": [i, j], "exponents": list(e)} for i, j, e in result.failing_pairs]
    witnesses += [{"not_gc_segment": i} for i in result.non_segments]
    payload = certificate(
        "conflict-set",
        {"target": f"FBNK:n={n}:k={k}", "acceptance": [sorted(s) for s in acc.sets]},
        result.verdict,
        witnesses,
        result.bound,
        applies_to=list(result.applies_to),
        exponent_grid=list(result.exponent_grid),
        checked_pairs=result.checked_pairs,
        lower_bound=pgcl_lower_bound(n, k),
    )
    emit(payload, args.out)
    return EXIT_OK if result.bound is not None else EXIT_REFUTED


def verify_fooling_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    witness = nfw_witness(n)
    _, reached = determinize_nfw(witness.restricted)
    ok = witness.relation_report.verdict and witness.ab_report.verdict
    payload = certificate(
        "fooling",
        {"target": f"AB:n={n}"},
        "certified" if ok else "refuted",
        bound=witness.ab_report.fooling_set_size() if ok else None,
        relation_exact=witness.relation_report.exact,
        ab_exact=witness.ab_report.exact,
        reachable_subsets=len(reached),
    )
    emit(payload, args.out)
    return EXIT_OK if ok else EXIT_REFUTED


def count_qrank_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    print(f"n={n} m={args.m} enumerated={count_q_rankings(n, args.m)} formula={L_formula(n, args.m)}")
    return EXIT_OK


def count_pgcl_cmd(args, cfg) -> int:
    n, k = _ngbw_nk(args, cfg)
    print(f"n={n} k={k} pgcl={count_pgcl(acc_of(gen_fb_nk(n, k)))} lower_bound={pgcl_lower_bound(n, k)}")
    return EXIT_OK


def count_tight_cmd(args, cfg) -> int:
    n = _nbw_n(args, cfg)
    for m, value in count_tight(n).items():
        print(f"m={m} tight={value}")
    return EXIT_OK


def count_L_cmd(args, cfg) -> int:
    m, value = L_max(_nbw_n(args, cfg))
    print(f"m*={m}, L={value}")
    return EXIT_OK


def analyze_asymptotic_cmd(args, cfg) -> int:
    step = args.grid_step if args.grid_step is not None else float(cfg.analysis.grid_step)
    growth_n = args.growth_n if args.growth_n is not None else int(cfg.analysis.growth_n)
    point = maximize_h(step, int(cfg.analysis.refine_rounds))
    print(f"h={point.h:.6f} beta={point.beta:.6f} gamma={point.gamma:.6f}")
    exact, _ = michel_baseline(growth_n)
    print(f"n={growth_n} growth={growth_ratio(growth_n):.6f} michel={exact:.6f}")
    return EXIT_OK


def export_hoa_cmd(args, cfg) -> int:
    emit(export_hoa(load_automaton(args.automaton)), args.out)
    return EXIT_OK


def import_hoa_cmd(args, cfg) -> int:
    with open(args.input, encoding="utf-8") as f:
        automaton = import_hoa(f.read())
    emit(automaton_to_json(automaton), args.out)
    return EXIT_OK


HANDLERS: Dict[Tuple[str, str], Callable] = {
    ("gen", "fa"): gen_fa_cmd,
    ("gen", "fb"): gen_fb_cmd,
    ("gen", "fbnk"): gen_fbnk_cmd,
    ("gen", "b"): gen_b_cmd,
    ("gen", "gamma"): gen_gamma_cmd,
    ("word", "hard"): word_hard_cmd,
    ("word", "wfg"): word_wfg_cmd,
    ("word", "seg"): word_seg_cmd,
    ("word", "fooling"): word_fooling_cmd,
    ("check", "member"): check_member_cmd,
    ("check", "equiv"): check_equiv_cmd,
    ("check", "seg-props"): check_seg_props_cmd,
    ("check", "wfg-props"): check_wfg_props_cmd,
    ("complement", "rank"): complement_rank_cmd,
    ("verify", "complement"): verify_complement_cmd,
    ("verify", "confuse"): verify_confuse_cmd,
    ("verify", "conflict-set"): verify_conflict_set_cmd,
    ("verify", "fooling"): verify_fooling_cmd,
    ("count", "qrank"): count_qrank_cmd,
    ("count", "pgcl"): count_pgcl_cmd,
    ("count", "tight"): count_tight_cmd,
    ("count", "L"): count_L_cmd,
    ("analyze", "asymptotic"): analyze_asymptotic_cmd,
    ("export", "hoa"): export_hoa_cmd,
    ("import", "hoa"): import_hoa_cmd,
}


def main(args) -> int:
    cfg = setup(args)
    handler = HANDLERS[(args.command, args.action)]
    try:
        return handler(args, cfg)
    except (FormatError, AutomatonError, ValueError, OSError) as e:
        logger.error(f"{args.command} {args.action}: {e}")
        return EXIT_USAGE


def entry_point():
    args = get_args_parser(add_help=True).parse_args()
    sys.exit(main(args))


if __name__ == "__main__":
    entry_point()
