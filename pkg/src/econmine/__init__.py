"""econmine: economic opinion mining for election social media.

Candidate-filtered documents are sentiment-partitioned, each
(candidate, polarity) partition is topic-modeled with collapsed-Gibbs LDA,
topics are mapped onto five economic issues, and per-issue DPNT scores
(positive-topic count minus negative-topic count) decide which candidate
holds the advantage.
"""

from .corpus import (
    CandidateQuerySet,
    CleanDocument,
    CorpusPartition,
    RawDocument,
    load_documents,
    load_query_sets,
    load_stoplist,
    match_candidates,
    partition_corpus,
    remove_stopwords,
    tokenize,
)
# the dpnt() scoring function itself stays module-qualified (econmine.dpnt.dpnt)
# so the submodule binding is not shadowed
from .dpnt import (
    TIE,
    AdvantageTable,
    DpntReport,
    DpntScore,
    IssueTopicCounts,
    advantage,
    build_report,
    compare_with_survey,
    issue_salience_rank,
    load_survey,
    total_dpnt,
)
from .exceptions import ConfigError, EconmineError, InputError, StageError, ValidationError
from .issues import (
    ISSUES,
    UNASSIGNED,
    IssueAssignment,
    IssueLexicon,
    assign_issue,
    filter_economic_topics,
    load_issue_lexicon,
)
from .lda import (
    LdaConfig,
    LdaState,
    TopicSummary,
    TrainedModel,
    VocabMap,
    build_vocab,
    estimate_phi,
    estimate_theta,
    gibbs_sweep,
    init_state,
    log_likelihood,
    top_words,
    train,
)
from .pipeline import PipelineConfig, RunManifest, load_config, run_pipeline, run_stage
from .sentiment import (
    NEGATIVE,
    NEUTRAL,
    POSITIVE,
    SentimentLexicon,
    SentimentResult,
    classify,
    count_matches,
    load_lexicon,
)

__version__ = "0.1.0"
