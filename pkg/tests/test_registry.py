from bckit import cli, combinatorics, cube_checks, form_checks, mutations

EXPECTED_IDS = {
    # coefficients
    "PASCAL", "VANDERMONDE", "A-ANTISYM-1", "A-ANTISYM-2", "A-DIFF-I", "A-DIFF-J", "A-BOUNDARY",
    "A-RECURRENCE-N", "A-RECURRENCE-M", "L521", "L522", "L523", "L524", "BCREC",
    "APPA1", "APPA2", "APPA3",
    # forms and the product assembly
    "L16", "L43", "DSUM", "L44", "P45", "L612", "P63", "L65",
    "L517-1", "L517-2", "L517-3", "L517-4", "P518", "P518-EXTRACT",
    "BULLETSYM", "TRISYM", "LEIBNIZ", "THETA-MULT",
    # cubes
    "EXACT", "BOUNDARY-SQ", "BOUNDARY-DEGEN", "CUBICAL", "PERMUTE", "SERIALIZE", "L32",
    "SIMPLICIAL", "CHAIN-SPLIT", "CHAIN-RANDOM", "L31", "BW-FACES", "L33", "EMI-REMARK",
    "CHI-FACES", "P52-LEFT", "P52-RIGHT", "LR-SWITCH", "G2-DEGEN",
}


def test_catalogs_cover_the_expected_ids():
    ids = set(combinatorics.CATALOG) | set(form_checks.CATALOG) | set(cube_checks.CATALOG)
    assert ids == EXPECTED_IDS
    total = len(combinatorics.CATALOG) + len(form_checks.CATALOG) + len(cube_checks.CATALOG)
    assert total == len(EXPECTED_IDS)


def test_every_id_is_scheduled_by_some_suite():
    cfg = cli.parse_config(["verify", "all"], {})
    scheduled = {cid for suite in cli.SUITES for _, cid, _ in cli.suite_tasks(cfg, suite)}
    assert scheduled == EXPECTED_IDS


def test_mutations_and_targets():
    assert set(mutations.MUTATIONS) == {"A-SIGN-FLIP", "SBINOM-OFFBY1", "S-FORM-DROP-SIGN"}
    assert set(cli.MUTATION_TARGETS) == set(mutations.MUTATIONS)
    assert set(cli.MUTATION_TARGETS.values()) <= set(cli.SUITES)
