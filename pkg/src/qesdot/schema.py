"""JSON Schemas for every CLI command's ``--format json`` output."""

_num = {"type": "number"}
_num_or_null = {"type": ["number", "null"]}
_int = {"type": "integer"}


def _envelope(row: dict, extra: dict | None = None) -> dict:
    props = {
        "command": {"type": "string"},
        "units": {"enum": ["effective", "physical"]},
        "params": {"type": "object"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": row,
                "required": sorted(row),
                "additionalProperties": False,
            },
        },
    }
    props.update(extra or {})
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "properties": props,
        "required": sorted(props),
        "additionalProperties": False,
    }


TABLE1_ROW = {
    "j": _int,
    "n": _int,
    "abs_m": _int,
    "dE_over_hbar_w": _int,
    "beta1_closed": _num_or_null,
    "beta1_engine": _num,
    "w_closed": _num_or_null,
    "w_engine": _num,
    "half_wc": _num_or_null,
    "rel_delta": _num_or_null,
}

SOLUTION_ROW = {
    "N": _int,
    "abs_m": _int,
    "node_count": _int,
    "lam": _num,
    "w": _num,
    "e_prime": _num,
    "coulomb_lock": _num,
    "p_coeffs": {"type": "array", "items": _num},
    "g_betas": {"type": "array", "items": _num},
    "g_n_factor": _int,
    "g_remainder_norm": _num,
    "w0": _num_or_null,
    "wc": _num_or_null,
    "B": _num_or_null,
}

REPORT_ROW = {
    "method": {"enum": ["fd", "ritz"]},
    "N": _int,
    "abs_m": _int,
    "node_count": _int,
    "target": _num,
    "oracle_value": _num,
    "oracle_nodes": _int,
    "abs_gap": _num,
    "rel_gap": _num,
    "nodes_match": {"type": "boolean"},
    "tol": _num,
    "passed": {"type": "boolean"},
}

SPECTRUM_ROW = {
    "e_total": _num,
    "e_cm": _num,
    "e_rm": _num,
    "n_cm": _int,
    "m_cm": _int,
    "m_rel": _int,
    "N": _int,
    "node_count": _int,
    "w": _num,
    "wc": _num,
}

SWEEP_ROW = {"wc": _num, "m": _int, "e_min": _num}

WAVEFUNCTION_ROW = {"r": _num, "psi": _num}

SCHEMAS = {
    "table1": _envelope(TABLE1_ROW, {"agree": {"type": "boolean"}}),
    "solve": _envelope(SOLUTION_ROW),
    "verify": _envelope(REPORT_ROW, {"passed": {"type": "boolean"}}),
    "spectrum": _envelope(SPECTRUM_ROW),
    "sweep": _envelope(SWEEP_ROW, {"staircase": {"type": "boolean"}}),
    "wavefunction": _envelope(
        WAVEFUNCTION_ROW,
        {
            "header": {
                "type": "object",
                "properties": {"lam": _num, "w": _num, "e_prime": _num, "node_count": _int},
                "required": ["e_prime", "lam", "node_count", "w"],
            }
        },
    ),
}
