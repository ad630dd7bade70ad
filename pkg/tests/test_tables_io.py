import numpy as np
import pytest

from polarquant.channel import design_uniform_grid, grid_distribution
from polarquant.density_evolution import run_quantized_de
from polarquant.errors import TableFormatError
from polarquant.tables_io import export_tables, import_tables


@pytest.fixture(scope="module")
def luts():
    g = design_uniform_grid(0.9)
    return run_quantized_de(grid_distribution(0.9, g), 3, 8, g, design_ebn0_db=0.5)


@pytest.fixture
def saved(luts, tmp_path):
    path = tmp_path / "t.lut"
    export_tables(luts, path)
    return path


def _edit(path, fn):
    lines = path.read_text().splitlines()
    fn(lines)
    path.write_text("\n".join(lines) + "\n")


def test_round_trip_is_lossless(luts, saved, tmp_path):
    back = import_tables(saved)
    assert back == luts
    assert back.grid == luts.grid and back.design_ebn0_db == 0.5
    export_tables(back, tmp_path / "again.lut")
    assert (tmp_path / "again.lut").read_text() == saved.read_text()


def test_header_fields(saved):
    head = saved.read_text().splitlines()[0].split()
    assert head[:2] == ["polarquant-lut", "1"]
    assert head[2:5] == ["N=8", "K=8", "design_ebn0_db=0.5"]
    assert head[5].startswith("grid=128,")


def test_bad_entry_names_the_node(saved):
    def corrupt(lines):
        i = lines.index(next(l for l in lines if l.startswith("node g ")))
        j = next(k for k in range(i, len(lines)) if lines[k].startswith("g0 "))
        parts = lines[j].split()
        parts[1] = "99"
        lines[j] = " ".join(parts)

    _edit(saved, corrupt)
    with pytest.raises(TableFormatError, match="node 'g'"):
        import_tables(saved)


def test_recon_order_is_checked(saved):
    def swap(lines):
        j = next(k for k, l in enumerate(lines) if l.startswith("recon ") and k > 5)
        parts = lines[j].split()
        parts[1], parts[2] = parts[2], parts[1]
        lines[j] = " ".join(parts)

    _edit(saved, swap)
    with pytest.raises(TableFormatError, match="ascending"):
        import_tables(saved)


def test_version_and_truncation(saved):
    text = saved.read_text()
    saved.write_text(text.replace("polarquant-lut 1", "polarquant-lut 2", 1))
    with pytest.raises(TableFormatError, match="version"):
        import_tables(saved)
    saved.write_text("\n".join(text.splitlines()[:40]) + "\n")
    with pytest.raises(TableFormatError, match="truncated"):
        import_tables(saved)
    saved.write_text("")
    with pytest.raises(TableFormatError):
        import_tables(saved)


def test_out_of_order_nodes_are_rejected(saved):
    def rename(lines):
        j = next(k for k, l in enumerate(lines) if l.startswith("node f "))
        lines[j] = lines[j].replace("node f ", "node g ")

    _edit(saved, rename)
    with pytest.raises(TableFormatError, match="out of order"):
        import_tables(saved)
