# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Benchmarks
----------
Harnesses that time the derivation, interpolation, translation and qualitative search workloads.
Every harness returns a :class:`pandas.DataFrame`, so results can be written with ``to_csv``.

Timings are wall-clock medians over a number of runs, after one discarded warm-up run.
"""
import itertools
import logging
import statistics
import time
import numpy as np
import pandas as pd
from ..algebra import QualitativeNetwork, RuleTable, count_scenarios
from ..geometry import BASE_RELATIONS, expand_relation, rcc8
from ..spacetime import TOPOLOGY_UNIVERSAL, Interval, RelationAtom, Scene
from ..spacetime import derive_movement, derive_scene, derive_size, derive_topology
from ..translation import UngroundTranslation, WorkspaceConfig, enumerate_translation_models
from .generate import gen_scene

__all__ = [
    'timed',
    'run_t1',
    'run_t2',
    'run_t3',
    'run_t4',
    'random_network',
    'scaling_exponent',
    'T2_FRACTIONS',
    'T3_RELATIONS',
]
log = logging.getLogger(__name__)

T2_FRACTIONS = (0.05, 0.10, 0.15, 0.20)
T3_RELATIONS = ('c', 'o', 'dr', 'dc', 'po')


def timed(fn, repeats=5):
    """ Run a function ``repeats`` times after a warm-up run.

    Returns:
        tuple: result of the last run and median wall-clock time in seconds
    """
    result = fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, statistics.median(times)


def run_t1(n, m=40, seed=0, repeats=5, cfg=None):
    """ Time relation derivation on a random scene.

    Two workloads are timed: every aspect for one pair over all frames (``one_pair_all_steps``),
    and every aspect for all pairs over the first step (``all_pairs_one_step``).

    Args:
        n (int): number of objects
        m (int, optional): number of frames; Default **40**
        seed (int, optional): random seed; Default **0**
        repeats (int, optional): timed runs per workload; Default **5**
        cfg (DeriveConfig, optional): derivation parameters

    Returns:
        pandas.DataFrame: columns ``n, m, workload, seconds``
    """
    log.info(f'T1 with n={n}, m={m}, seed={seed}')
    scene = gen_scene(n, m, seed)
    ids = list(scene)
    whole = Interval(0, m - 1)
    first = Interval(0, min(1, m - 1))

    def one_pair():
        a = scene[ids[0]]
        if len(ids) < 2:
            return derive_size(a, None, whole, cfg) | derive_movement(a, None, whole, cfg)
        b = scene[ids[1]]
        return (
            derive_topology(a, b, whole, cfg)
            | derive_size(a, b, whole, cfg)
            | derive_movement(a, b, whole, cfg)
        )

    def all_pairs():
        return derive_scene(scene, interval=first, cfg=cfg)

    rows = []
    for workload, fn in (('one_pair_all_steps', one_pair), ('all_pairs_one_step', all_pairs)):
        _, seconds = timed(fn, repeats)
        rows.append({'n': n, 'm': m, 'workload': workload, 'seconds': seconds})
        log.info(f'T1 {workload}: {seconds:.4f}s')
    return pd.DataFrame(rows, columns=['n', 'm', 'workload', 'seconds'])


def scaling_exponent(rows, workload='all_pairs_one_step'):
    """ Slope of ``log(seconds)`` against ``log(n)`` for one T1 workload.

    Args:
        rows (pandas.DataFrame): concatenated :func:`run_t1` results for several ``n``
        workload (str, optional): workload to fit; Default **all_pairs_one_step**

    Returns:
        float: fitted exponent, about 2 for a workload that grows with the number of pairs
    """
    data = rows[(rows['workload'] == workload) & (rows['seconds'] > 0)]
    if data['n'].nunique() < 2:
        raise ValueError('Need timings for at least two different n to fit an exponent')
    slope, _ = np.polyfit(np.log(data['n'].astype(float)), np.log(data['seconds']), 1)
    return float(slope)


def _deletion_order(scene, seed):
    """ Interior slices of every object, in a random order that only depends on the seed. """
    candidates = [(id, t) for id in scene for t in scene[id].times[1:-1]]
    rng = np.random.default_rng([seed, 2])
    return [candidates[i] for i in rng.permutation(len(candidates))]


def run_t2(fraction, seed=0, n=10, m=20, cfg=None):
    """ Accuracy of relations derived from interpolated slices.

    A fraction of the slices is deleted, relations are derived again with the missing slices interpolated
    and compared to the relations of the full scene.
    First and last slices are never deleted.
    For one seed, the deleted slices of a smaller fraction are a subset of those of a larger fraction.
    Relations are compared over the whole interval, set ``cfg.segments`` to compare their maximal sub-intervals instead.

    Args:
        fraction (float): fraction of all slices to delete
        seed (int, optional): random seed; Default **0**
        n (int, optional): number of objects; Default **10**
        m (int, optional): number of frames; Default **20**
        cfg (DeriveConfig, optional): derivation parameters

    Returns:
        float: ``|reference & derived| / |reference | derived|``
    """
    if not 0 <= fraction < 1:
        raise ValueError(f'Deletion fraction should be in [0, 1) [{fraction}]')
    scene = gen_scene(n, m, seed)
    frames = list(range(m))
    interval = Interval(0, m - 1)
    reference = set(derive_scene(scene, interval=interval, cfg=cfg, times=frames))

    order = _deletion_order(scene, seed)
    k = min(int(round(fraction * n * m)), len(order))
    deleted = {}
    for id, t in order[:k]:
        deleted.setdefault(id, []).append(t)
    reduced = Scene(scene[id].without(deleted.get(id, ())) for id in scene)
    derived = set(derive_scene(reduced, interval=interval, cfg=cfg, times=frames))

    union = reference | derived
    accuracy = len(reference & derived) / len(union) if union else 1.0
    log.info(f'T2 fraction={fraction}, seed={seed}: deleted {k} slices, accuracy {accuracy:.4f}')
    return accuracy


def _t3_problem(n, seed, m):
    rng = np.random.default_rng([seed, 3])
    scene = gen_scene(n + 1, m, rng=rng)
    ids = list(scene)
    source = ids[-1]
    translation = UngroundTranslation(source, 'g', shared_vector=False)
    interval = Interval(0, m - 1)
    atoms = [
        RelationAtom('topology', str(rng.choice(T3_RELATIONS)), ('g', other), interval)
        for other in ids[:-1]
    ]
    return scene, translation, atoms


def _verified(scene, atoms, model):
    """ Re-check every universal relation of a model's witnesses with rcc8. """
    shapes = {w.time: s.shape for w in model.witnesses.get('g', ()) for s in w.slices}
    for atom in atoms:
        if atom.name not in TOPOLOGY_UNIVERSAL:
            continue
        other = scene[atom.args[1]]
        for t, shape in shapes.items():
            if rcc8(shape, other.shape_at(t)) not in expand_relation(atom.name):
                return False
    return True


def run_t3(n, seed=0, m=10, max_models=10000, repeats=5):
    """ Count and time the models of a translated program.

    A random object ``g`` with ``m`` slices is translated per slice,
    with one random relation of ``c, o, dr, dc, po`` to each of ``n`` ground objects.

    Returns:
        dict: ``models`` (number found, at most ``max_models``), ``verified`` (models whose witnesses re-verify) and ``seconds``
    """
    log.info(f'T3 with n={n}, m={m}, seed={seed}, max_models={max_models}')
    scene, translation, atoms = _t3_problem(n, seed, m)
    workspace = WorkspaceConfig.from_scene(scene)

    def run():
        models = enumerate_translation_models(scene, [translation], atoms, workspace)
        return list(itertools.islice(models, max_models))

    models, seconds = timed(run, repeats)
    verified = sum(_verified(scene, atoms, model) for model in models)
    log.info(f'T3 found {len(models)} models in {seconds:.4f}s, {verified} verified')
    return {'n': n, 'models': len(models), 'verified': verified, 'seconds': seconds}


def random_network(n, rng, degree=5, alternatives=4):
    """ Random topology network.

    ``min(round(n * degree / 2), n * (n - 1) / 2)`` distinct pairs are constrained,
    each to a disjunction of ``alternatives`` distinct base relations.

    Args:
        n (int): number of nodes ``o00, o01, ...``
        rng (numpy.random.Generator): random number generator
        degree (float, optional): mean degree of the constraint graph; Default **5**
        alternatives (int, optional): base relations per constraint; Default **4**

    Returns:
        QualitativeNetwork: network
    """
    nodes = [f'o{i:02d}' for i in range(n)]
    net = QualitativeNetwork(nodes)
    pairs = list(itertools.combinations(nodes, 2))
    edges = min(int(round(n * degree / 2)), len(pairs))
    for idx in sorted(rng.choice(len(pairs), edges, replace=False)):
        bases = rng.choice(len(BASE_RELATIONS), alternatives, replace=False)
        net.set_constraint(*pairs[idx], frozenset(BASE_RELATIONS[i] for i in bases))
    return net


def run_t4(n, seed=0, trials=10, limit=1, repeats=5, table=None, degree=5, alternatives=4):
    """ Time scenario search on random qualitative networks.

    Args:
        n (int): number of nodes
        seed (int, optional): random seed, trial ``i`` uses the stream ``(seed, i)``; Default **0**
        trials (int, optional): number of networks; Default **10**
        limit (int, optional): scenarios to look for per network; Default **1**, ie. a consistency check
        repeats (int, optional): timed runs per network; Default **5**
        table (RuleTable, optional): property rules; Default **embedded table**

    Returns:
        pandas.DataFrame: columns ``n, trial, models, seconds``
    """
    table = table or RuleTable.embedded()
    log.info(f'T4 with n={n}, seed={seed}, trials={trials}, degree={degree}, alternatives={alternatives}')
    rows = []
    for trial in range(trials):
        net = random_network(n, np.random.default_rng([seed, trial]), degree, alternatives)
        models, seconds = timed(lambda: count_scenarios(net, table, limit), repeats)
        rows.append({'n': n, 'trial': trial, 'models': models, 'seconds': seconds})
    df = pd.DataFrame(rows, columns=['n', 'trial', 'models', 'seconds'])
    log.info(f'T4 consistent fraction {(df["models"] > 0).mean():.2f}, median {df["seconds"].median():.4f}s')
    return df
