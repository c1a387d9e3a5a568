"""Instrumentation: multiplication tallies and storage audits.

Counting convention: every multiplication, division and square root counts
as one multiplication-equivalent. Additions are not counted.
"""


class Tally:
    """Caller-owned multiplication counter (never global)."""

    __slots__ = ("count",)

    def __init__(self, count=0):
        self.count = int(count)

    def add(self, k):
        self.count += int(k)

    def __int__(self):
        return self.count

    def __repr__(self):
        return f"Tally({self.count})"


def bump(tally, k):
    if tally is not None:
        tally.count += int(k)


class StorageAudit:
    """Track live and peak auxiliary storage, in float words."""

    def __init__(self):
        self.live = 0
        self.peak = 0

    def alloc(self, words):
        self.live += int(words)
        if self.live > self.peak:
            self.peak = self.live

    def free(self, words):
        self.live -= int(words)
