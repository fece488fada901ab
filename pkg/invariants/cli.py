"""
Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification mismatch, 2 on a
usage error or when the parameters are beyond the work guards.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from dotenv import dotenv_values

from config import ENV_PREFIX, Config
from invariants.exceptions import ParameterError, WorkBoundExceeded
from invariants.models import Composition, RunConfig
from invariants.utils.basisgen import basis_series, build, verify_independence_and_span, verify_invariance
from invariants.utils.combinat import SeriesPoly, hilbert_conjecture
from invariants.utils.dickson import Q
from invariants.utils.export import basis_dump, export_rows, export_series, write_json
from invariants.utils.gfq import get_field
from invariants.utils.groups import make_group
from invariants.utils.identities import run_identities
from invariants.utils.solver import check_work_bound, orbit_count, verify_hilbert
from invariants.utils.steenrod import flexible_span_check, verify_filtration

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

# settings a --config file may carry, by key without the prefix
_FILE_KEYS = {
    'Q': ('q', int),
    'M': ('m', int),
    'N': ('n', int),
    'ALPHA': ('alpha', Composition.parse),
    'JOBS': ('jobs', int),
    'MAX_MONOMIALS': ('max_monomials', int),
    'MAX_ORBIT_POINTS': ('max_orbit_points', int),
    'MAX_GROUP_ORDER': ('max_group_order', int),
    'RANDOM_SEED': ('random_seed', int),
    'RANDOM_SAMPLES': ('random_samples', int),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--q', type=int, help='field size (prime power)')
    common.add_argument('--m', type=int, help='truncation level')
    common.add_argument('--n', type=int, help='rank')
    common.add_argument('--alpha', type=Composition.parse, help='composition a,b,c')
    common.add_argument('--json', dest='json_path', help='write the JSON report here')
    common.add_argument('--csv', dest='csv_path', help='write the per-degree table here (.xlsx for a workbook)')
    common.add_argument('--jobs', type=int, help='worker processes')
    common.add_argument('--config', dest='config_path', help='key=value settings file')
    common.add_argument('--verbose', action='store_true', help='debug logging')

    parser = argparse.ArgumentParser(prog='invariants',
                                     description='Invariants of truncated polynomial rings under parabolic subgroups')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('dickson', parents=[common], help='print the Dickson invariant Q_{n,i}')
    p.add_argument('--i', type=int, required=True)
    sub.add_parser('series', parents=[common], help='print C_{alpha,m}(t)')
    sub.add_parser('orbits', parents=[common], help='count P(alpha)-orbits on F_{q^m}^n')
    p = sub.add_parser('verify', parents=[common], help='run a verification campaign')
    p.add_argument('subject', choices=['hilbert', 'basis', 'filtration', 'identities'])
    p.add_argument('--k', type=int, default=1, help='filtration level')
    p.add_argument('--conjecture', action='store_true', help='use the general recipe for every composition')
    sub.add_parser('basis-dump', parents=[common], help='dump B_m(alpha) with recipe metadata')
    p = sub.add_parser('serve', parents=[common], help='start the HTTP API')
    p.add_argument('--host', default='127.0.0.1')
    p.add_argument('--port', type=int, default=5000)
    return parser


def _defaults():
    return {
        'jobs': Config.JOBS,
        'max_monomials': Config.MAX_MONOMIALS,
        'max_orbit_points': Config.MAX_ORBIT_POINTS,
        'max_group_order': Config.MAX_GROUP_ORDER,
        'random_seed': Config.RANDOM_SEED,
        'random_samples': Config.RANDOM_SAMPLES,
    }


def _file_settings(path):
    values = dotenv_values(path)
    settings = {}
    for key, raw in values.items():
        if raw is None:
            continue
        name = key[len(ENV_PREFIX):] if key.startswith(ENV_PREFIX) else key
        entry = _FILE_KEYS.get(name.upper())
        if entry is None:
            logger.warning(f"Ignoring unknown setting {key} in {path}")
            continue
        field_name, convert = entry
        try:
            settings[field_name] = convert(raw)
        except ValueError as e:
            raise ParameterError(f"bad value for {key} in {path}: {str(e)}") from e
    return settings


def make_run_config(args):
    """Merge defaults (environment included), the --config file and command-line flags, in rising priority."""
    settings = _defaults()
    if args.config_path:
        settings.update(_file_settings(args.config_path))
    for name in ('q', 'm', 'n', 'alpha', 'json_path', 'csv_path', 'jobs'):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    settings['verbose'] = args.verbose
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    cfg = RunConfig(command=args.command, **{k: v for k, v in settings.items() if k in fields})
    if cfg.alpha is not None and cfg.n is None:
        cfg.n = cfg.alpha.size
    if cfg.alpha is not None and cfg.alpha.size != cfg.n:
        raise ParameterError(f"alpha={cfg.alpha} is not a composition of n={cfg.n}")
    if cfg.m is not None and cfg.m < 1:
        raise ParameterError(f"truncation level must be positive, got {cfg.m}")
    return cfg


def _require_alpha(cfg):
    if cfg.alpha is None:
        if cfg.n is None:
            raise ParameterError("--alpha (or --n) is required")
        cfg.alpha = Composition((cfg.n,))
    return cfg.alpha


def _emit(cfg, report):
    if cfg.json_path:
        write_json(report, cfg.json_path)


def cmd_dickson(cfg, args):
    if cfg.n is None:
        raise ParameterError("--n is required")
    print(Q(cfg.n, args.i, get_field(cfg.q)))
    return EXIT_OK


def cmd_series(cfg, args):
    alpha = _require_alpha(cfg)
    get_field(cfg.q)
    series = hilbert_conjecture(alpha, cfg.m, cfg.q)
    print(series)
    _emit(cfg, {'alpha': str(alpha), 'm': cfg.m, 'q': cfg.q, 'series': series.to_json(), 'total': series.total()})
    return EXIT_OK


def cmd_orbits(cfg, args):
    alpha = _require_alpha(cfg)
    get_field(cfg.q)
    count = orbit_count(alpha, cfg.m, cfg.q, cfg.max_orbit_points, cfg.max_group_order)
    print(count)
    _emit(cfg, {'alpha': str(alpha), 'm': cfg.m, 'q': cfg.q, 'orbits': count})
    return EXIT_OK


def _verify_hilbert(cfg, args):
    alpha = _require_alpha(cfg)
    get_field(cfg.q)
    report = verify_hilbert(alpha, cfg.m, cfg.q, cfg.jobs, cfg.max_monomials,
                            cfg.max_orbit_points, cfg.max_group_order)
    print(f"alpha={alpha} m={cfg.m} q={cfg.q}: {'equal' if report['equal'] else 'MISMATCH'} "
          f"(totals {report['totals']})")
    _emit(cfg, report)
    if cfg.csv_path:
        export_series(report, cfg.csv_path)
    return EXIT_OK if report['equal'] else EXIT_MISMATCH


def _verify_basis(cfg, args):
    alpha = _require_alpha(cfg)
    if alpha.size > 3 and not args.conjecture:
        raise ParameterError(f"explicit bases are known for n <= 3; use --conjecture for n = {alpha.size}")
    check_work_bound(alpha.size, cfg.m, cfg.q, cfg.max_monomials)
    params = get_field(cfg.q)
    G = make_group(alpha, params, cfg.max_group_order)
    elems = build(alpha, cfg.m, params, conjecture=args.conjecture)
    invariance = verify_invariance(elems, G, cfg.m)
    structure = verify_independence_and_span(elems, G, cfg.m)
    conjecture = hilbert_conjecture(alpha, cfg.m, cfg.q)
    counts = basis_series(elems)
    ok = invariance['invariant'] and structure['independent'] and structure['spanning'] and counts == conjecture
    report = {
        'alpha': str(alpha), 'm': cfg.m, 'q': cfg.q, 'count': len(elems),
        'conjecture': conjecture.to_json(), 'basis': counts.to_json(),
        'invariance': invariance, 'structure': structure, 'ok': ok,
    }
    print(f"B_{cfg.m}({alpha}) over F_{cfg.q}: {len(elems)} elements, "
          f"invariant={invariance['invariant']} independent={structure['independent']} "
          f"spanning={structure['spanning']}")
    _emit(cfg, report)
    if cfg.csv_path:
        dims = [row['dimension'] for row in structure['degrees']]
        table = {'conjecture': report['conjecture'], 'bruteforce': SeriesPoly(dims).to_json(),
                 'totals': {'conjecture': conjecture.total(), 'basis': len(elems), 'bruteforce': sum(dims)}}
        by_degree = {row['degree']: row['count'] for row in structure['degrees']}
        export_series(table, cfg.csv_path, basis_counts=by_degree)
    return EXIT_OK if ok else EXIT_MISMATCH


def _verify_filtration(cfg, args):
    n = cfg.n or (cfg.alpha.size if cfg.alpha else None)
    if n is None:
        raise ParameterError("--n is required")
    check_work_bound(n, cfg.m, cfg.q, cfg.max_monomials)
    params = get_field(cfg.q)
    report = verify_filtration(n, args.k, cfg.m, params)
    report['flexible'] = flexible_span_check(n, args.k, cfg.m, params)
    ok = report['ok'] and report['flexible']['ok']
    print(f"F_({n},{args.k}) in Q_{cfg.m}({n}) over F_{cfg.q}: "
          f"steenrod_closed={report['steenrod_closed']} dickson_closed={report['dickson_closed']} "
          f"annihilated={report['annihilated']} flexible={report['flexible']['ok']}")
    _emit(cfg, report)
    if cfg.csv_path:
        export_rows(report['flexible']['dimensions'], cfg.csv_path)
    return EXIT_OK if ok else EXIT_MISMATCH


def _verify_identities(cfg, args):
    params = get_field(cfg.q)
    report = run_identities(cfg.m, params, samples=cfg.random_samples, seed=cfg.random_seed,
                            max_monomials=cfg.max_monomials)
    for check in report['checks']:
        status = 'ok' if not check['failures'] else 'FAIL'
        print(f"{check['name']:<22} {check['passed']:>5}/{check['cases']:<5} {status}")
    _emit(cfg, report)
    if cfg.csv_path:
        rows = [{'name': c['name'], 'cases': c['cases'], 'passed': c['passed']} for c in report['checks']]
        export_rows(rows, cfg.csv_path)
    return EXIT_OK if report['ok'] else EXIT_MISMATCH


_VERIFY = {
    'hilbert': _verify_hilbert,
    'basis': _verify_basis,
    'filtration': _verify_filtration,
    'identities': _verify_identities,
}


def cmd_verify(cfg, args):
    return _VERIFY[args.subject](cfg, args)


def cmd_basis_dump(cfg, args):
    alpha = _require_alpha(cfg)
    check_work_bound(alpha.size, cfg.m, cfg.q, cfg.max_monomials)
    elems = build(alpha, cfg.m, get_field(cfg.q))
    dump = basis_dump(elems, alpha, cfg.m, cfg.q)
    if cfg.json_path:
        write_json(dump, cfg.json_path)
        print(f"{len(elems)} elements written to {cfg.json_path}")
    else:
        print(json.dumps(dump, indent=2))
    return EXIT_OK


def cmd_serve(cfg, args):
    from invariants import create_app
    app = create_app()
    app.run(host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {
    'dickson': cmd_dickson,
    'series': cmd_series,
    'orbits': cmd_orbits,
    'verify': cmd_verify,
    'basis-dump': cmd_basis_dump,
    'serve': cmd_serve,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO)
    logging.getLogger().setLevel(level)
    try:
        cfg = make_run_config(args)
        return COMMANDS[args.command](cfg, args)
    except (ParameterError, WorkBoundExceeded) as e:
        logger.error(f"Refusing to run: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
