"""Negative-control mutations.

A mutation is a scoped override of one definition.  Modules that cache
values depending on a mutated definition register a reset hook so that
entering or leaving a mutation never leaks stale values.
"""

from contextlib import contextmanager

MUTATIONS = {
    "A-SIGN-FLIP": "negate coeff_a",
    "SBINOM-OFFBY1": "shift the upper index of sbinom by one",
    "S-FORM-DROP-SIGN": "drop the alternating sign in s_form",
}

_active = None
_reset_hooks = []


class UnknownMutation(ValueError):
    pass


def register_reset(hook):
    _reset_hooks.append(hook)
    return hook


def active():
    return _active


def is_active(mutation_id):
    return _active == mutation_id


def set_mutation(mutation_id):
    """Install a mutation process-wide (None clears it)."""
    global _active
    if mutation_id is not None and mutation_id not in MUTATIONS:
        raise UnknownMutation(mutation_id)
    if mutation_id != _active:
        _active = mutation_id
        for hook in _reset_hooks:
            hook()


@contextmanager
def apply_mutation(mutation_id):
    previous = _active
    set_mutation(mutation_id)
    try:
        yield
    finally:
        set_mutation(previous)
