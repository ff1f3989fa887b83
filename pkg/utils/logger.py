import sys
import time
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional

from tqdm import tqdm


class Tally(object):
    """Count outcomes of checks and format them as one summary entry."""

    def __init__(self, fmt=None):
        if fmt is None:
            fmt = "{passed}/{total} passed ({skipped} skipped)"
        self.passed = 0
        self.failed = 0
        self.skipped = 0
        self.fmt = fmt

    def update(self, passed: Optional[bool]):
        if passed is None:
            self.skipped += 1
        elif passed:
            self.passed += 1
        else:
            self.failed += 1

    @property
    def total(self):
        return self.passed + self.failed

    @property
    def ok(self):
        return self.failed == 0

    def __str__(self):
        return self.fmt.format(
            passed=self.passed, failed=self.failed, skipped=self.skipped, total=self.total
        )


class CheckLogger(object):
    """Record verification checks (name, outcome, witnesses) grouped by tally name."""

    def __init__(self, delimiter="\t"):
        self.tallies = defaultdict(Tally)
        self.checks: List[Dict[str, Any]] = []
        self.skipped: List[Dict[str, Any]] = []
        self.delimiter = delimiter

    def update(self, name: str, passed: bool, group: Optional[str] = None, **witness):
        passed = bool(passed)
        self.tallies[group or name].update(passed)
        self.checks.append({"name": name, "passed": passed, **witness})
        return passed

    def skip(self, name: str, reason: str, group: Optional[str] = None, **witness):
        self.tallies[group or name].update(None)
        self.skipped.append({"name": name, "reason": reason, **witness})

    def __getattr__(self, attr):
        if attr in self.tallies:
            return self.tallies[attr]
        if attr in self.__dict__:
            return self.__dict__[attr]
        raise AttributeError(
            "'{}' object has no attribute '{}'".format(type(self).__name__, attr)
        )

    @property
    def passed(self):
        return all(t.ok for t in self.tallies.values())

    def __str__(self):
        entries = []
        for name, tally in self.tallies.items():
            entries.append("{}: {}".format(name, str(tally)))
        return self.delimiter.join(entries)

    def log_every(self, iterable: Iterable, header: Optional[str] = None):
        """Wrap a loop in a stderr progress bar and print the tally when it ends."""
        header = header or ""
        start_time = time.time()
        for obj in tqdm(iterable, desc=header, file=sys.stderr, leave=False):
            yield obj
        total_time = time.time() - start_time
        print(
            "{} {} ({:.2f} s)".format(header, str(self), total_time), file=sys.stderr
        )
