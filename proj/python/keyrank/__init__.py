"""Prompt-based unsupervised keyphrase extraction toolkit."""

from keyrank._core import (  # noqa: F401
    Candidate,
    CandidateTokenWindow,
    EvalReport,
    KeyrankError,
    LabeledDocument,
    Prf,
    PromptTemplate,
    RenderedPrompt,
    ScoredCandidate,
    TaggedToken,
    TaggerConfig,
    Token,
    TokenLogProbs,
    average_over_datasets,
    builtin_catalog,
    dedup_candidates,
    default_tagger_config,
    extract_candidates,
    extract_keyphrases,
    f1_at_k,
    load_catalog,
    load_dataset,
    locate_candidate_window,
    parse_pretagged,
    pos_tag,
    rank_candidates,
    reference_score,
    render,
    score_candidate,
    segment_concat_tokens,
    stem,
    stem_phrase,
    tokenize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
