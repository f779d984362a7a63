"""Few-shot sample retrieval: normalization, labels, embeddings and LCR."""

from .embed import HashingEmbedder, HttpEmbedder, distance, embed
from .labels import LabelSet, assign_labels, label
from .lcr import Candidate, lcr_rank, lcr_retrieve, matched_count
from .lexicon import Lexicon, LexiconError, load_lexicon
from .normalize import NormToken, normalize, normalize_tokens
from .sampledb import Sample, SampleDB, load_sample_db, program_labels

__all__ = [
    "Candidate",
    "HashingEmbedder",
    "HttpEmbedder",
    "LabelSet",
    "Lexicon",
    "LexiconError",
    "NormToken",
    "Sample",
    "SampleDB",
    "assign_labels",
    "distance",
    "embed",
    "label",
    "lcr_rank",
    "lcr_retrieve",
    "load_lexicon",
    "load_sample_db",
    "matched_count",
    "normalize",
    "normalize_tokens",
    "program_labels",
]
