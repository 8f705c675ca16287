"""Shared test configuration.

Hypothesis deadlines are disabled: the property tests exercise exact
rational arithmetic whose per-example cost varies with the drawn
coefficients and with machine load, so wall-clock deadlines only add
flakiness.
"""

from hypothesis import settings

settings.register_profile("no-deadline", deadline=None)
settings.load_profile("no-deadline")
