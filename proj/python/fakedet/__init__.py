"""Fake-account detection toolkit: feature extraction, correlation
analysis and from-scratch classifiers over social-media profile data.

The heavy lifting lives in the compiled `_fakedet` extension; this
package re-exports its surface.
"""

from _fakedet import (  # noqa: F401
    DataError,
    Pipeline,
    TrainError,
    correlate,
    evaluate,
    extract,
    extract_features,
    feature_names,
    pearson,
    synth,
)

__all__ = [
    "DataError",
    "Pipeline",
    "TrainError",
    "correlate",
    "evaluate",
    "extract",
    "extract_features",
    "feature_names",
    "pearson",
    "synth",
]
