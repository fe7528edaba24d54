use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The closed inventory of GUM v10 RST relation labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RstLabel {
    AdversativeAntithesis,
    AdversativeConcession,
    AdversativeContrast,
    AttributionPositive,
    AttributionNegative,
    CausalCause,
    CausalResult,
    ContextBackground,
    ContextCircumstance,
    ContingencyCondition,
    ElaborationAttribute,
    ElaborationAdditional,
    ExplanationEvidence,
    ExplanationJustify,
    ExplanationMotivation,
    EvaluationComment,
    JointDisjunction,
    JointList,
    JointSequence,
    JointOther,
    ModeManner,
    ModeMeans,
    OrganizationHeading,
    OrganizationPhatic,
    OrganizationPreparation,
    PurposeAttribute,
    PurposeGoal,
    RestatementPartial,
    RestatementRepetition,
    TopicQuestion,
    TopicSolutionhood,
    SameUnit,
}

/// Coarse relation class, the prefix of each label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RstClass {
    Adversative,
    Attribution,
    Causal,
    Context,
    Contingency,
    Elaboration,
    Explanation,
    Evaluation,
    Joint,
    Mode,
    Organization,
    Purpose,
    Restatement,
    Topic,
    SameUnit,
}

use RstLabel::*;

impl RstLabel {
    pub const ALL: [RstLabel; 32] = [
        AdversativeAntithesis,
        AdversativeConcession,
        AdversativeContrast,
        AttributionPositive,
        AttributionNegative,
        CausalCause,
        CausalResult,
        ContextBackground,
        ContextCircumstance,
        ContingencyCondition,
        ElaborationAttribute,
        ElaborationAdditional,
        ExplanationEvidence,
        ExplanationJustify,
        ExplanationMotivation,
        EvaluationComment,
        JointDisjunction,
        JointList,
        JointSequence,
        JointOther,
        ModeManner,
        ModeMeans,
        OrganizationHeading,
        OrganizationPhatic,
        OrganizationPreparation,
        PurposeAttribute,
        PurposeGoal,
        RestatementPartial,
        RestatementRepetition,
        TopicQuestion,
        TopicSolutionhood,
        SameUnit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AdversativeAntithesis => "adversative-antithesis",
            AdversativeConcession => "adversative-concession",
            AdversativeContrast => "adversative-contrast",
            AttributionPositive => "attribution-positive",
            AttributionNegative => "attribution-negative",
            CausalCause => "causal-cause",
            CausalResult => "causal-result",
            ContextBackground => "context-background",
            ContextCircumstance => "context-circumstance",
            ContingencyCondition => "contingency-condition",
            ElaborationAttribute => "elaboration-attribute",
            ElaborationAdditional => "elaboration-additional",
            ExplanationEvidence => "explanation-evidence",
            ExplanationJustify => "explanation-justify",
            ExplanationMotivation => "explanation-motivation",
            EvaluationComment => "evaluation-comment",
            JointDisjunction => "joint-disjunction",
            JointList => "joint-list",
            JointSequence => "joint-sequence",
            JointOther => "joint-other",
            ModeManner => "mode-manner",
            ModeMeans => "mode-means",
            OrganizationHeading => "organization-heading",
            OrganizationPhatic => "organization-phatic",
            OrganizationPreparation => "organization-preparation",
            PurposeAttribute => "purpose-attribute",
            PurposeGoal => "purpose-goal",
            RestatementPartial => "restatement-partial",
            RestatementRepetition => "restatement-repetition",
            TopicQuestion => "topic-question",
            TopicSolutionhood => "topic-solutionhood",
            SameUnit => "same-unit",
        }
    }

    pub fn class(self) -> RstClass {
        match self {
            AdversativeAntithesis | AdversativeConcession | AdversativeContrast => RstClass::Adversative,
            AttributionPositive | AttributionNegative => RstClass::Attribution,
            CausalCause | CausalResult => RstClass::Causal,
            ContextBackground | ContextCircumstance => RstClass::Context,
            ContingencyCondition => RstClass::Contingency,
            ElaborationAttribute | ElaborationAdditional => RstClass::Elaboration,
            ExplanationEvidence | ExplanationJustify | ExplanationMotivation => RstClass::Explanation,
            EvaluationComment => RstClass::Evaluation,
            JointDisjunction | JointList | JointSequence | JointOther => RstClass::Joint,
            ModeManner | ModeMeans => RstClass::Mode,
            OrganizationHeading | OrganizationPhatic | OrganizationPreparation => RstClass::Organization,
            PurposeAttribute | PurposeGoal => RstClass::Purpose,
            RestatementPartial | RestatementRepetition => RstClass::Restatement,
            TopicQuestion | TopicSolutionhood => RstClass::Topic,
            SameUnit => RstClass::SameUnit,
        }
    }

    /// `same-unit` only glues discontinuous EDUs back together.
    pub fn is_discourse(self) -> bool {
        self != SameUnit
    }

    /// Labels that are conventionally annotated as multinuclear.
    pub fn default_multinuclear(self) -> bool {
        matches!(
            self,
            AdversativeContrast
                | JointDisjunction
                | JointList
                | JointSequence
                | JointOther
                | RestatementRepetition
                | SameUnit
        )
    }

    pub fn is_attribution(self) -> bool {
        self.class() == RstClass::Attribution
    }

    pub fn inventory() -> String {
        RstLabel::ALL.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for RstLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RstLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        RstLabel::ALL
            .iter()
            .copied()
            .find(|l| l.as_str() == lower)
            .ok_or_else(|| {
                Error::Validation(format!(
                    "unknown RST relation label `{}`; expected one of: {}",
                    s,
                    RstLabel::inventory()
                ))
            })
    }
}
