"""Fixed posets the suites keep coming back to."""

from posetrep.poset import Poset


def chain(*labels):
    return Poset.build(labels, [(labels[i], labels[i + 1]) for i in range(len(labels) - 1)])


def antichain_poset(*labels):
    return Poset.build(labels, [])


def example510():
    """Eight-element poset with p under a,b,c and e,g under p; the running
    worked example for filter differentiation."""
    return Poset.build(
        "abcdefgp",
        [("p", "a"), ("p", "b"), ("p", "c"),
         ("e", "p"), ("e", "d"),
         ("g", "e"), ("g", "f")],
    )


def poset_112():
    """Disjoint union of two points and a 2-chain."""
    return Poset.build(["x", "y", "u", "v"], [("u", "v")])
