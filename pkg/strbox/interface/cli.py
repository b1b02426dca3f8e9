# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Command line
------------
Entry point of the ``str`` script.

Every subcommand reads fact files, accepts ``--config FILE`` and ``--verbose``,
and writes its results in the fact syntax on standard output or to ``--out``.
Fatal errors are logged and end the process with a non-zero exit status.
"""
import argparse
import logging
import sys
from pathlib import Path
import pandas as pd
from ..algebra import RuleTable, derive_rule_table
from ..config import default_seed, load_config
from ..experiments import T2_FRACTIONS, NoPlan, PlanProblem, plan, run_t1, run_t2, run_t3, run_t4
from ..log import set_log_level
from ..spacetime import Interval, RelationAtom
from ..translation import WorkspaceConfig, export_svg
from .evaluate import ResultSet, build_scene, evaluate
from .formats import formats, generate, load_program
from .parser import Directive
from .serialize import serialize

__all__ = ['main', 'build_parser']
log = logging.getLogger('strbox.str')

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_ERROR = 2


class CliError(Exception):
    """ Error in the command line arguments. """


def _interval(text):
    try:
        start, end = text.split(':')
        return Interval(int(start), int(end))
    except ValueError as err:
        raise argparse.ArgumentTypeError(f'Expected T1:T2 [{text}]') from err


def _pair(text):
    args = tuple(a.strip() for a in text.split(','))
    if len(args) not in (1, 2) or not all(args):
        raise argparse.ArgumentTypeError(f'Expected A or A,B [{text}]')
    return args


def _box(text):
    try:
        box = tuple(float(v) for v in text.split(','))
    except ValueError as err:
        raise argparse.ArgumentTypeError(f'Expected xmin,ymin,xmax,ymax [{text}]') from err
    if len(box) != 4:
        raise argparse.ArgumentTypeError(f'Expected xmin,ymin,xmax,ymax [{text}]')
    return box


def _common(parser):
    parser.add_argument('--config', help='YAML configuration file', default=None)
    parser.add_argument('-v', '--verbose', help='Print debug messages', action='store_true')


def _program(parser):
    parser.add_argument('file', help='Fact file, directory of .lp files, glob or %%d expression')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='str',
        description='Reason about space-time objects described in fact files',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    derive = sub.add_parser('derive', help='Derive relations from ground slices')
    _program(derive)
    derive.add_argument('--aspect', choices=('topology', 'size', 'movement', 'all'), default=None)
    derive.add_argument('--pair', type=_pair, default=None, help='Objects A or A,B; uppercase names are variables')
    derive.add_argument('--time', type=_interval, default=None, help='Interval T1:T2')
    derive.add_argument('--alpha', type=int, default=None, help='Largest follow gap in frames')
    derive.add_argument('--near-threshold', type=float, default=None, help='Centroid distance of near objects')
    derive.add_argument('--segments', action='store_true', help='Report maximal sub-intervals')
    derive.add_argument('--min-duration', type=int, default=None, help='Keep atoms that last this long')
    derive.add_argument('--near-at', type=int, default=None, help='Keep atoms of objects that are near at this time')
    derive.add_argument('--window', type=_interval, default=None, help='Keep atoms inside T1:T2')
    derive.add_argument('--relation', action='append', default=None, help='Keep atoms with this relation name')
    derive.add_argument('--format', choices=('facts', 'yaml'), default='facts')
    derive.add_argument('--out', default=None, help='Output file instead of standard output')
    _common(derive)

    check = sub.add_parser('check', help='Check the consistency of a program')
    _program(check)
    check.add_argument('--search', action='store_true', help='Also look for an atomic scenario')
    _common(check)

    translate = sub.add_parser('translate', help='Find translations of unground objects')
    _program(translate)
    translate.add_argument('--workspace', type=_box, default=None, help='xmin,ymin,xmax,ymax')
    translate.add_argument('--emit-svg', default=None, help='SVG file with the solution sets and witnesses')
    translate.add_argument('--max-models', type=int, default=1)
    translate.add_argument('--out', default=None, help='Output file instead of standard output')
    _common(translate)

    planner = sub.add_parser('plan', help='Plan the cheapest motions that reach a goal')
    _program(planner)
    planner.add_argument('--horizon', type=int, default=None, help='Last frame of the plan')
    planner.add_argument('--max-cost', type=int, default=None)
    planner.add_argument('--emit-svg', default=None, help='Directory for one SVG per frame')
    _common(planner)

    bench = sub.add_parser('bench', help='Run a benchmark harness')
    bench.add_argument('harness', choices=('t1', 't2', 't3', 't4'))
    bench.add_argument('--n', type=int, action='append', default=None, help='Problem size, can be repeated')
    bench.add_argument('--m', type=int, default=None, help='Number of frames')
    bench.add_argument('--seed', type=int, default=None)
    bench.add_argument('--repeats', type=int, default=5)
    bench.add_argument('--out', default=None, help='CSV file instead of standard output')
    _common(bench)

    rules = sub.add_parser('rules', help='Derive a rule table from sampled scenes')
    rules.add_argument('--budget', type=int, default=10**4)
    rules.add_argument('--seed', type=int, default=None)
    rules.add_argument('--out', default=None, help='Rule file instead of standard output')
    _common(rules)

    return parser


def _write(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding='utf-8')
        log.info(f'Wrote {out}')


def _derive(args, cfg):
    prog = load_program(args.file)
    if args.aspect or args.pair or args.time:
        scene, _ = build_scene(prog, cfg.eps)
        interval = args.time
        if interval is None:
            times = scene.times
            if not times:
                raise CliError('Program has no slices to derive relations from')
            interval = Interval(times[0], times[-1])
        prog.directives = [Directive(args.aspect or 'all', args.pair or ('A', 'B'), interval)]
    elif not prog.directives:
        raise CliError(f'{args.file} has no spacetime directives, use --aspect, --pair or --time')

    if args.min_duration is not None:
        prog.filters.append(('min_duration', args.min_duration))
    if args.near_at is not None:
        prog.filters.append(('near', args.near_at))
    if args.window is not None:
        prog.filters.append(('window', args.window))
    for name in args.relation or ():
        prog.filters.append(('relation', name))

    derive_cfg = cfg.override(
        follows_max_gap=args.alpha,
        near_threshold=args.near_threshold,
        segments=True if args.segments else None,
    ).derive
    results = evaluate(prog, derive_cfg, cfg.workspace)

    if args.out is None:
        _write(formats[args.format]().serialize(results), None)
    else:
        generate(args.format, results, args.out)
    return EXIT_OK if results.consistent else EXIT_INCONSISTENT


def _check(args, cfg):
    prog = load_program(args.file)
    results = evaluate(prog, cfg.derive, cfg.workspace, search=args.search)
    if results.consistent:
        print('status(consistent).')
        return EXIT_OK

    print('status(inconsistent).')
    print(f'% {results.reason}')
    for atom in sorted(results.violated):
        print(f'% violated: {atom}')
    return EXIT_INCONSISTENT


def _translate(args, cfg):
    if args.max_models < 1:
        raise CliError(f'--max-models should be positive [{args.max_models}]')
    prog = load_program(args.file)
    workspace = WorkspaceConfig(args.workspace) if args.workspace else cfg.workspace
    results = evaluate(prog, cfg.derive, workspace, limit=args.max_models)
    _write(serialize(results), args.out)

    if args.emit_svg and results.consistent:
        scene, _ = build_scene(prog, cfg.eps)
        points = [w.vector for ws in results.witnesses.values() for w in ws]
        shapes = [s.shape for ws in results.witnesses.values() for w in ws for s in w.slices]
        shapes += [scene[i].shape_at(t) for i in scene if scene[i].is_ground for t in scene[i].times]
        export_svg(args.emit_svg, list(results.solution_sets.values()), shapes, points)
        log.info(f'Wrote {args.emit_svg}')
    return EXIT_OK if results.consistent else EXIT_INCONSISTENT


def _plan_problem(prog, cfg, horizon):
    if not prog.goals:
        raise CliError('Plan programs need a goal/3 fact')
    if len(prog.goals) > 1:
        raise CliError(f'Plan programs take one goal, found {len(prog.goals)}')
    if not prog.movable:
        raise CliError('Plan programs need at least one movable/2 fact')

    if horizon is not None:
        interval = Interval(prog.horizon.start if prog.horizon else 0, horizon)
    elif prog.horizon is not None:
        interval = prog.horizon
    else:
        raise CliError('Plan programs need a horizon/1 fact or --horizon')

    scene, _ = build_scene(prog, cfg.eps)
    name, a, b = prog.goals[0]
    goal = RelationAtom('topology', name, (a, b), Interval(interval.end, interval.end))
    hard = [atom for atom in prog.assertions if atom.aspect == 'topology']
    return PlanProblem(scene, dict(prog.movable), hard, goal, interval, cfg.workspace)


def _plan(args, cfg):
    prog = load_program(args.file)
    problem = _plan_problem(prog, cfg, args.horizon)
    problem.max_cost = args.max_cost
    try:
        solution = plan(problem, cfg.eps)
    except NoPlan as err:
        print('status(inconsistent).')
        print(f'% {err}')
        return EXIT_INCONSISTENT

    print(f'% cost {solution.total_cost}')
    for id in problem.movable:
        for step, moved in enumerate(solution.assignment[id]):
            if moved:
                print(f'% {id} moves at {problem.frames[step + 1]}')
    print(serialize(ResultSet('consistent', witnesses=solution.trajectories)), end='')

    if args.emit_svg:
        folder = Path(args.emit_svg)
        for t in problem.frames:
            shapes = [
                solution.shape_at(id, t) if id in solution.trajectories else problem.shape(id, t)
                for id in problem.scene
            ]
            export_svg(folder / f'frame_{t:04d}.svg', polygons=shapes, bounds=problem.scene.bounds)
        log.info(f'Wrote {len(problem.frames)} frames to {folder}')
    return EXIT_OK


def _bench(args, cfg):
    seed = args.seed if args.seed is not None else (cfg.seed if cfg.seed is not None else default_seed())
    log.info(f'Benchmark {args.harness} [seed={seed}]')
    sizes = args.n or {'t1': [10, 20, 40], 't2': [10], 't3': [2, 4, 6], 't4': [10, 20]}[args.harness]

    frames = []
    for n in sizes:
        if args.harness == 't1':
            frames.append(run_t1(n, args.m or 40, seed, args.repeats, cfg.derive))
        elif args.harness == 't2':
            rows = [
                {'n': n, 'fraction': f, 'accuracy': run_t2(f, seed, n, args.m or 20, cfg.derive)}
                for f in T2_FRACTIONS
            ]
            frames.append(pd.DataFrame(rows))
        elif args.harness == 't3':
            frames.append(pd.DataFrame([run_t3(n, seed, args.m or 10, repeats=args.repeats)]))
        else:
            frames.append(run_t4(n, seed, repeats=args.repeats))
    df = pd.concat(frames, ignore_index=True)

    if args.out is None:
        sys.stdout.write(df.to_csv(index=False))
    else:
        df.to_csv(args.out, index=False)
        log.info(f'Wrote {args.out}')
    return EXIT_OK


def _rules(args, cfg):
    seed = args.seed if args.seed is not None else (cfg.seed if cfg.seed is not None else default_seed())
    table = derive_rule_table(args.budget, seed, table=RuleTable.embedded())
    _write(table.serialize(), args.out)
    return EXIT_OK


_COMMANDS = {
    'derive': _derive,
    'check': _check,
    'translate': _translate,
    'plan': _plan,
    'bench': _bench,
    'rules': _rules,
}


def main(argv=None):
    """ Run the ``str`` command line.

    Args:
        argv (list, optional): arguments without the program name; Default **sys.argv[1:]**

    Returns:
        int: exit status, **0** on success, **1** for inconsistent programs and **2** for errors
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_log_level(logging.DEBUG)

    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.command](args, cfg)
    except (CliError, ValueError, TypeError, LookupError, OSError) as err:
        log.error(f'{type(err).__name__}: {err}')
        return EXIT_ERROR
