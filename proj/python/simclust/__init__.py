"""Retweet-network and hashtag consensus clustering of social-media corpora."""

from ._core import (
    NOISE,
    UNDEFINED,
    Corpus,
    CorpusStats,
    DataError,
    Error,
    IngestReport,
    IoError,
    PowerLawFit,
    SynthConfig,
    TweetRecord,
    ValidationError,
    adjusted_rand_index,
    build_sankey,
    dbscan,
    default_params,
    fit_power_law,
    generate,
    modified_dbscan,
    overlap_fraction,
    rank_influencers,
    run_lang_pipeline,
    run_net_pipeline,
    stats,
)

__all__ = [
    "NOISE",
    "UNDEFINED",
    "Corpus",
    "CorpusStats",
    "DataError",
    "Error",
    "IngestReport",
    "IoError",
    "PowerLawFit",
    "SynthConfig",
    "TweetRecord",
    "ValidationError",
    "adjusted_rand_index",
    "build_sankey",
    "dbscan",
    "default_params",
    "fit_power_law",
    "generate",
    "modified_dbscan",
    "overlap_fraction",
    "rank_influencers",
    "run_lang_pipeline",
    "run_net_pipeline",
    "stats",
]
