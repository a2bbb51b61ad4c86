import pathlib
import runpy

import pytest

GALLERY = sorted((pathlib.Path(__file__).parent.parent / "gallery").glob("*.py"))


@pytest.mark.parametrize("script", GALLERY, ids=lambda p: p.name)
def test_gallery_script_runs(script, capsys):
    runpy.run_path(str(script), run_name="__main__")
    assert capsys.readouterr().out


def test_counterexample_sign():
    from opuclab import explore_conjecture
    import numpy as np
    rows = explore_conjecture(0.25, 6, 2, np.linspace(-0.01, 0.01, 21), rate=0.1)
    signs = {round(r["phi0"], 2): r["observed_sign"] for r in rows}
    assert signs[0.61] == -1
    assert signs[2.35] == 1
