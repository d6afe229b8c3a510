import math

import pytest

import slicecwe


def test_region_booleans():
    square = slicecwe.Region2D.rectangle(0, 0, 100, 100)
    cut = square - slicecwe.capsule((40, 50), (60, 50), 5.0)
    expected = 10000 - (25 * math.pi + 200)
    assert abs(cut.area - expected) < 0.1
    assert len(cut.holes) == 1
    assert not cut.contains(50, 50)
    assert cut.contains(10, 10)


def test_slot_engagement():
    stock = slicecwe.Region2D.rectangle(0, 0, 200, 100)
    region = stock - slicecwe.capsule((40, 50), (95, 50), 5.0, chord_tol=1e-4)
    (iv,) = slicecwe.engagement_intervals(100, 50, 5.0, region, chord_tol=1e-4)
    assert abs(iv.width - 240.0) < 0.05


def test_json_round_trip():
    tool = slicecwe.parse_tool(
        '{"id":"T1","type":"flat_end_mill","diameter_mm":12.0,"flute_length_mm":26.0}'
    )
    assert tool.diameter == 12.0
    assert slicecwe.parse_tool(tool.to_json()).flute_length == 26.0
    with pytest.raises(slicecwe.ValidationError, match=r"\$\.type"):
        slicecwe.parse_tool('{"id":"T1","type":"ball","diameter_mm":1,"flute_length_mm":1}')


def test_simulation_and_conservation():
    config = slicecwe.SimulationConfig(dz=1.0, record_timing=False)
    result = slicecwe.run_simulation(
        config,
        slicecwe.synthetic_tool(),
        slicecwe.synthetic_stock(),
        slicecwe.synthetic_path(120),
    )
    removed = sum(r.removed_volume for r in result.records)
    assert len(result.records) == 120
    assert abs(removed - (result.initial_volume - result.final_volume)) <= 1e-3 * result.initial_volume
    assert result.perf.n_cls_scheduled == 120
    assert result.perf.n_cls_processed <= 120
    assert result.cwe_csv().splitlines()[0].startswith("cl_index,x_mm,y_mm,z_mm")


def test_validation_report():
    ok, table = slicecwe.validation_report()
    assert ok
    assert table.splitlines()[0].startswith("name,kind,")
