from clevrshift import evaluation


def test__all__() -> None:
    """Test that `clevrshift.evaluation` has the expected `__all__`."""
    assert set(evaluation.__all__) == {
        "ScoreReport",
        "score",
        "FACTORS",
        "FACTOR_VARIANTS",
        "AccuracyGrid",
        "RdReport",
        "relative_degrade",
        "GridCell",
        "GridManifest",
        "load_manifest",
        "evaluate_manifest",
        "score_files",
        "DISCREPANCY_NOTE",
        "format_grid",
        "format_score",
        "grid_record",
        "score_record",
    }
