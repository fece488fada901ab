import json
import logging
import os

import pandas as pd

from invariants.utils.mvpoly import parse
from invariants.utils.solver import per_degree_rows

logger = logging.getLogger(__name__)

SERIES_COLUMNS = ['degree', 'conjecture', 'bruteforce', 'basis_count', 'match']


def series_frame(report, basis_counts=None):
    """One row per degree: degree, conjecture, bruteforce, basis count, match."""
    return pd.DataFrame(per_degree_rows(report, basis_counts), columns=SERIES_COLUMNS)


def totals_frame(report):
    totals = report.get('totals', {})
    return pd.DataFrame(
        [[name, value] for name, value in totals.items()],
        columns=['Count', 'Value'],
    )


def export_series(report, file_path, basis_counts=None):
    """
    Write the per-degree table of a Hilbert series report.

    Args:
        report (dict): Report from verify_hilbert
        file_path (str): .xlsx for a workbook with sheets Series and Totals, CSV otherwise
        basis_counts (dict): Optional {degree: number of basis elements}

    Returns:
        bool: True if export was successful, False otherwise
    """
    try:
        df = series_frame(report, basis_counts)
        if file_path.endswith('.xlsx'):
            with pd.ExcelWriter(file_path, engine='openpyxl') as writer:
                df.to_excel(writer, sheet_name='Series', index=False)
                totals_frame(report).to_excel(writer, sheet_name='Totals', index=False)
        else:
            df.to_csv(file_path, index=False)
        logger.info(f"Exported per-degree table to {file_path}")
        return True
    except (OSError, ValueError) as e:
        logger.error(f"Error exporting per-degree table: {str(e)}")
        return False


def export_rows(rows, file_path, columns=None):
    """Any list of flat dicts (filtration dimensions, basis tables) as CSV."""
    try:
        pd.DataFrame(rows, columns=columns).to_csv(file_path, index=False)
        logger.info(f"Exported {len(rows)} rows to {file_path}")
        return True
    except (OSError, ValueError) as e:
        logger.error(f"Error exporting rows to {file_path}: {str(e)}")
        return False


def write_json(report, file_path):
    try:
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w') as fh:
            json.dump(report, fh, indent=2, default=str)
        logger.info(f"Wrote report to {file_path}")
        return True
    except (OSError, TypeError) as e:
        logger.error(f"Error writing report {file_path}: {str(e)}")
        return False


def basis_dump(elems, alpha, m, q):
    """Recipe metadata and polynomial text for every basis element."""
    return {
        'alpha': str(alpha),
        'm': m,
        'q': q,
        'count': len(elems),
        'elements': [e.to_dict() for e in elems],
    }


def load_basis_dump(file_path, params, nvars):
    """
    Read a basis dump back.

    Returns:
        tuple: (dump dict, list of Poly parsed from the element texts)
    """
    with open(file_path) as fh:
        dump = json.load(fh)
    polys = [parse(e['value'], params, nvars) for e in dump['elements']]
    return dump, polys
