"""Short expertise taglines for social-media experts.

Candidates come from occupation titles spotted in profile bios, from the
occupation metadata of a knowledge-base page linked to the user's personal
site, or, as a fallback, from a popularity/activity/diffusion class. One
candidate per user is kept by a length-weighted tf-idf score.
"""

from .classification import (
    MetricVector,
    UserClass,
    classify,
    compute_metrics,
    compute_thresholds,
    default_tagline,
    normalize_metric,
)
from .errors import (  # noqa: F401
    DomainError,
    DuplicateUser,
    EmptyCorpus,
    EmptyInput,
    EmptyLexicon,
    InvalidProfile,
    MalformedUrl,
    NoCandidates,
    ParseError,
    TaglineError,
    UnequalRaterCounts,
    UnknownTerm,
)
from .evaluation import fleiss_kappa, good_pct, majority_good_pct, selection_majority_agreement
from .ingest import KbPage, OccupationLexicon, load_kb, load_lexicon, load_profiles, select_experts
from .linking import build_link_index, generate_kb_candidates, normalize_url, resolve_identity
from .model import Candidate, Method, PipelineConfig, Tagline, UserProfile, validate_profile
from .occupation import generate_occupation_candidates
from .pipeline import PipelineReport, run_batch, run_pipeline
from .selection import build_term_stats, flesch_score, score_candidate, select_final

__version__ = "0.1.0"
