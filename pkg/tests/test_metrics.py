import numpy as np
import pytest

from metrics import StreamErfMetrics, AverageMeter


def test_summarize():
    mean, se = StreamErfMetrics.summarize([1.0, 2.0, 3.0, 4.0])
    assert mean == 2.5
    assert se == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2.0)


def test_erf_against_baseline():
    metrics = StreamErfMetrics()
    metrics.extend('a', 'MC', [0.0, 2.0, 4.0])
    metrics.extend('a', 'PRE_CAS', [1.9, 2.0, 2.1])
    metrics.extend('b', 'RQMC_STD', [1.0, 1.0])
    results = metrics.get_results()
    assert list(results) == [('a', 'MC'), ('a', 'PRE_CAS'), ('b', 'RQMC_STD')]
    assert results[('a', 'MC')]['erf'] == 1.0
    assert results[('a', 'PRE_CAS')]['erf'] == pytest.approx(20.0)
    # no baseline for setting b
    assert results[('b', 'RQMC_STD')]['erf'] is None
    assert 'PRE_CAS' in metrics.to_str(results)


def test_reset():
    metrics = StreamErfMetrics()
    metrics.update('a', 'MC', 1.0)
    metrics.reset()
    assert metrics.get_results() == {}


def test_average_meter():
    meter = AverageMeter()
    meter.update('MC/run', 1.0)
    meter.update('MC/run', 3.0)
    assert meter.get_total('MC/run') == 4.0
    assert meter.get_results('MC/run') == 2.0
    meter.reset('MC/run')
    assert meter.get_results('MC/run') == 0.0
    meter.reset_all()
    assert meter.book == {}
