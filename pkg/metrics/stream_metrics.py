from collections import OrderedDict

import numpy as np


class _StreamMetrics(object):
    def __init__(self):
        """ Overridden by subclasses """
        raise NotImplementedError()

    def update(self, setting, method, value):
        """ Overridden by subclasses """
        raise NotImplementedError()

    def get_results(self):
        """ Overridden by subclasses """
        raise NotImplementedError()

    def to_str(self, metrics):
        """ Overridden by subclasses """
        raise NotImplementedError()

    def reset(self):
        """ Overridden by subclasses """
        raise NotImplementedError()


class StreamErfMetrics(_StreamMetrics):
    """
    Replicate estimates per (setting, method) and their error reduction factors
    """
    def __init__(self, baseline='MC'):
        self.baseline = baseline
        self.records = OrderedDict()

    def update(self, setting, method, value):
        self.records.setdefault((setting, method), []).append(float(value))

    def extend(self, setting, method, values):
        for v in values:
            self.update(setting, method, v)

    @staticmethod
    def summarize(values):
        """ mean and standard error of the mean of independent replicates """
        values = np.asarray(values, dtype=np.float64)
        if values.size < 2:
            return float(values.mean()), float('nan')
        return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))

    def get_results(self):
        """Returns one entry per (setting, method) in insertion order:
            - mean
            - stderr
            - erf = stderr of the baseline / stderr (None when undefined)
        """
        summary = OrderedDict((key, self.summarize(v)) for key, v in self.records.items())
        results = OrderedDict()
        for (setting, method), (mean, se) in summary.items():
            base = summary.get((setting, self.baseline))
            if method == self.baseline:
                erf = 1.0
            elif base is None or not se > 0:
                erf = None
            else:
                erf = base[1] / se
            results[(setting, method)] = {"mean": mean, "stderr": se, "erf": erf}
        return results

    @staticmethod
    def to_str(results):
        string = "\n"
        for (setting, method), row in results.items():
            erf = "-" if row["erf"] is None else "%.1f" % row["erf"]
            string += "%s %-9s mean=%.8g stderr=%.3e ERF=%s\n" % (setting, method, row["mean"], row["stderr"], erf)
        return string

    def reset(self):
        self.records = OrderedDict()


class AverageMeter(object):
    """Accumulates totals and averages per key (seconds spent per method)"""
    def __init__(self):
        self.book = dict()

    def reset_all(self):
        self.book.clear()

    def reset(self, key):
        if key in self.book:
            self.book[key] = [0.0, 0]

    def update(self, key, val):
        record = self.book.setdefault(key, [0.0, 0])
        record[0] += val
        record[1] += 1

    def get_total(self, key):
        return self.book[key][0]

    def get_results(self, key):
        total, count = self.book[key]
        return total / count if count else 0.0
