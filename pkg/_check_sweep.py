import json
import os
os.environ.setdefault("POWERGRAPHS_LOG_TO_FILE", "false")

from powergraphs.catalog import build_catalog, find_powergraph_twins, run_theorem_suite
from powergraphs.reconstruct import round_trip_suite


def main():
    catalog = build_catalog(16)
    report = run_theorem_suite(catalog)
    failures = round_trip_suite(catalog, seed=1, rounds=2)
    print('GROUPS=', len(catalog))
    print('SWEEP=', json.dumps({
        'pairs': report.pairs_tested,
        'pg_isomorphic': len(report.pg_isomorphic_pairs),
        'violations': report.violations,
        'twins': find_powergraph_twins(catalog),
        'elapsed': round(report.elapsed, 3),
    }))
    print('ROUNDTRIP_FAILURES=', [f.spec for f in failures])
    if report.violations or failures:
        raise SystemExit(1)

if __name__ == '__main__':
    main()
