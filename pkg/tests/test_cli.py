"""Command line entry points, exercised through main(argv) return codes."""

from __future__ import annotations

import json

import pytest

from tanglesum.cli import main

GOOD_COCYCLE = (
    '{"kind": "cocycle", "rack": "dihedral:3", "group": "z3",'
    ' "values": {"v_moduli": [3], "table": [[0,0,1],[2,0,2],[1,0,0]]}}'
)
BAD_COCYCLE = (
    '{"kind": "cocycle", "rack": "dihedral:3", "group": "z3",'
    ' "values": {"v_moduli": [3], "table": [[0,0,1],[2,0,2],[1,1,0]]}}'
)
RACK_PAIR = '{"kind": "rack", "rack": "dihedral:3"}'
EISERMANN_S3 = '{"kind": "eisermann", "group": "s3", "x": "(1 2 3)", "carrier": "group"}'


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_group_only(capsys):
    assert main(["validate", "--group", "s5"]) == 0
    out = capsys.readouterr().out
    assert "order 120" in out


def test_validate_rack(capsys):
    assert main(["validate", "--rack", "dihedral:5"]) == 0
    out = capsys.readouterr().out
    assert "validation of rack R_5: OK" in out
    assert "x <| x = x = x |> x" in out


def test_validate_good_cocycle_pair(capsys):
    assert main(["validate", "--pair", GOOD_COCYCLE]) == 0
    out = capsys.readouterr().out
    assert "ok" in out


def test_validate_perturbed_cocycle_fails_with_witness(capsys):
    assert main(["validate", "--pair", BAD_COCYCLE]) == 1
    err = capsys.readouterr().err
    assert "fails at" in err


def test_validate_eisermann_pair(capsys):
    assert main(["validate", "--pair", EISERMANN_S3]) == 0


def test_validate_nothing_given_is_a_usage_error(capsys):
    assert main(["validate"]) == 2


def test_validate_unknown_group_spec(capsys):
    assert main(["validate", "--group", "e8"]) == 2


# ---------------------------------------------------------------------------
# invariant
# ---------------------------------------------------------------------------


def test_invariant_closed_diagram(capsys):
    rc = main(["invariant", "--diagram", "trefoil_plus_closed",
               "--pair", RACK_PAIR])
    assert rc == 0
    assert "9*0" in capsys.readouterr().out.replace(" ", "")


def test_invariant_string_diagram_default_top(capsys):
    rc = main(["invariant", "--diagram", "trefoil_plus_string",
               "--pair", EISERMANN_S3])
    assert rc == 0
    out = capsys.readouterr().out
    assert "sum" in out or "id" in out


def test_invariant_json_output(capsys):
    rc = main(["invariant", "--diagram", "trefoil_plus_string",
               "--pair", EISERMANN_S3, "--json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["direction"] == "ket"
    assert payload["buckets"]


def test_invariant_with_explicit_boundaries(capsys):
    rc = main(["invariant", "--diagram", "trefoil_plus_string",
               "--pair", RACK_PAIR, "--top", "1", "--bottom", "1"])
    assert rc == 0
    assert main(["invariant", "--diagram", "trefoil_plus_string",
                 "--pair", RACK_PAIR, "--top", "1", "--bottom", "2"]) == 0


def test_invariant_bra_direction(capsys):
    rc = main(["invariant", "--diagram", "trefoil_plus_string",
               "--pair", EISERMANN_S3, "--direction", "bra"])
    assert rc == 0


def test_invariant_missing_diagram(capsys):
    assert main(["invariant", "--diagram", "no_such_knot",
                 "--pair", RACK_PAIR]) == 2


def test_invariant_requires_pair(capsys):
    assert main(["invariant", "--diagram", "unknot_closed"]) == 2


def test_invariant_bad_pair_json(capsys):
    assert main(["invariant", "--diagram", "unknot_closed",
                 "--pair", '{"kind": "sparkle"}']) == 2


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def test_tables_table1(capsys):
    assert main(["tables", "table1"]) == 0
    out = capsys.readouterr().out
    assert "table1: 14 ok, 0 erratum, 0 mismatch" in out


def test_tables_rejects_unknown_choice(capsys):
    with pytest.raises(SystemExit):
        main(["tables", "table7"])


# ---------------------------------------------------------------------------
# moves
# ---------------------------------------------------------------------------


def test_moves_default_pair_single_diagram(capsys):
    rc = main(["moves", "--diagram", "sigma1_sigma1inv_closed"])
    assert rc == 0
    assert "move neighbours ok" in capsys.readouterr().out


def test_moves_with_eisermann_pair(capsys):
    rc = main(["moves", "--diagram", "unknot_string",
               "--pair", EISERMANN_S3])
    assert rc == 0
