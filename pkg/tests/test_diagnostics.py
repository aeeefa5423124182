"""Test running the diagnostic scripts in dpalr

These scripts solve a small synthetic network from several initializations and plot
the solver convergence. They are useful as integration tests of the solver and the
plotting code but they do produce file output.
"""

from dpalr.diagnostics.convergence import main


def test_running_convergence_diagnostics(tmp_path):
    main(tmp_path, n_initializations=2)
    text = (tmp_path / "diagnostics.txt").read_text()
    assert "converged share" in text
    assert (tmp_path / "error_norms.pdf").exists()
