#include "meso/ontology.hpp"

#include <cstdio>

namespace meso {

namespace {

std::string strong_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "STRONG:%06d", n);
    return buf;
}

std::string cui_for(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C71%05d", n);
    return buf;
}

// "WorkStress" -> "work stress"; used for the preferred-name annotation.
std::string spaced_lower(const std::string& label) {
    std::string out;
    for (size_t i = 0; i < label.size(); ++i) {
        char c = label[i];
        if (c >= 'A' && c <= 'Z') {
            if (i > 0) out.push_back(' ');
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            out.push_back(c);
        }
    }
    return out;
}

struct SeedRow {
    int id;
    const char* label;
    std::vector<int> parents;
    std::vector<const char*> synonyms;
    const char* definition;
    const char* semantic_type;
    const char* translation_ko; // nullptr when absent
};

} // namespace

Ontology seed_meso() {
    static const std::vector<SeedRow> rows = {
        // Top-level classes
        {1, "Stressor", {}, {}, "An event, condition, or demand that triggers the stress process.",
         "Phenomenon or Process", "스트레스 요인"},
        {2, "StressMediator", {}, {},
         "A personal or environmental resource that modifies the impact of a stressor.",
         "Qualitative Concept", nullptr},
        {3, "StressAppraisal", {}, {},
         "The cognitive evaluation of whether a situation threatens one's well-being.",
         "Mental Process", nullptr},
        {4, "StressResponse", {}, {},
         "A mental, emotional, physical, or behavioral reaction to stress.", "Mental Process",
         nullptr},
        {5, "StressIntervention", {}, {},
         "A structured treatment or service intended to reduce stress.",
         "Therapeutic or Preventive Procedure", nullptr},
        {6, "StressCopingStrategy", {}, {}, "A method a person uses to manage stress.",
         "Mental Process", nullptr},
        {7, "StressCopingOutcome", {}, {},
         "The result of applying coping strategies to stress.", "Finding", nullptr},
        {8, "StressCharacteristics", {}, {},
         "Descriptive attributes of a stress experience such as onset and course.",
         "Qualitative Concept", nullptr},

        // Stressors
        {10, "WorkStress", {1}, {"job strain"},
         "Stress arising from one's occupation or workplace demands.", "Finding", nullptr},
        {11, "FinancialHardship", {1}, {"money trouble"},
         "Stress caused by economic difficulty or material scarcity.", "Finding", nullptr},
        {12, "HealthProblem", {1}, {"illness"},
         "A disease or health condition acting as a source of stress.", "Finding", nullptr},
        {13, "FamilyConflict", {1}, {},
         "Discord or disputes within the family acting as a stressor.", "Finding", nullptr},
        {14, "AcademicPressure", {1}, {"school pressure"},
         "Demands of study, exams, or grades acting as a stressor.", "Finding", nullptr},
        {15, "RelationshipBreakup", {1}, {},
         "The end of a romantic relationship acting as a stressor.", "Finding", nullptr},
        {16, "Bereavement", {1}, {"grief"},
         "The loss of a loved one and the mourning that follows.", "Finding", nullptr},
        {17, "SocialIsolation", {1}, {},
         "Lack of social contact or belonging acting as a stressor.", "Finding", nullptr},
        {18, "LegalTrouble", {1}, {},
         "Involvement in legal disputes or proceedings acting as a stressor.", "Finding", nullptr},
        {19, "Discrimination", {1}, {},
         "Unfair treatment based on group membership acting as a stressor.", "Finding", nullptr},
        {20, "WorkOverload", {10}, {},
         "Having more work demands than capacity or time allows.", "Finding", nullptr},
        {21, "JobInsecurity", {10}, {}, "Fear of losing one's employment.", "Finding", nullptr},
        {22, "ChronicIllness", {12}, {},
         "A long-lasting health condition acting as an ongoing stressor.", "Finding", nullptr},
        {23, "SleepDeprivation", {12}, {},
         "Insufficient sleep acting as a physiological stressor.", "Finding", nullptr},

        // Mediators
        {30, "SocialSupport", {2}, {},
         "Help and comfort available from one's social network.", "Qualitative Concept", nullptr},
        {31, "Resilience", {2}, {}, "The capacity to recover quickly from difficulties.",
         "Qualitative Concept", nullptr},
        {32, "SelfEfficacy", {2}, {}, "Belief in one's ability to handle demands.",
         "Qualitative Concept", nullptr},
        {33, "PriorExperience", {2}, {},
         "Earlier exposure to similar situations that shapes the stress response.",
         "Qualitative Concept", nullptr},
        {34, "PersonalityTrait", {2}, {},
         "A stable disposition that influences how stress is perceived and handled.",
         "Qualitative Concept", nullptr},
        {35, "Optimism", {2}, {}, "A general expectation of positive outcomes.",
         "Qualitative Concept", nullptr},

        // Appraisal
        {40, "ThreatAppraisal", {3}, {}, "Evaluating a situation as potentially harmful.",
         "Mental Process", nullptr},
        {41, "ChallengeAppraisal", {3}, {},
         "Evaluating a situation as a surmountable demand with potential gain.", "Mental Process",
         nullptr},
        {42, "PerceivedControl", {3}, {},
         "The degree to which a person feels able to influence the situation.", "Mental Process",
         nullptr},
        {43, "LossAppraisal", {3}, {},
         "Evaluating a situation as harm or loss already sustained.", "Mental Process", nullptr},

        // Responses
        {50, "Restlessness", {4}, {},
         "A physical manifestation of mental discomfort marked by inability to stay still.",
         "Sign or Symptom", nullptr},
        {51, "Impatience", {4}, {}, "Irritation at delay; intolerance of waiting.",
         "Sign or Symptom", nullptr},
        {52, "Anxiety", {4}, {}, "A feeling of worry, nervousness, or unease.", "Sign or Symptom",
         "불안"},
        {53, "Irritability", {4}, {}, "Being easily annoyed or provoked.", "Sign or Symptom",
         nullptr},
        {54, "Insomnia", {4}, {}, "Difficulty falling or staying asleep.", "Sign or Symptom",
         "불면증"},
        {55, "Fatigue", {4}, {}, "Persistent tiredness not relieved by rest.", "Sign or Symptom",
         nullptr},
        {56, "Headache", {4}, {}, "Head pain occurring as a somatic stress response.",
         "Sign or Symptom", nullptr},
        {57, "EmotionalExhaustion", {4}, {}, "Feeling emotionally drained and depleted.",
         "Sign or Symptom", nullptr},
        {58, "Worry", {4}, {}, "Repetitive thought about possible negative outcomes.",
         "Sign or Symptom", nullptr},
        {59, "Anger", {4}, {}, "A strong feeling of displeasure or hostility.", "Sign or Symptom",
         nullptr},
        {60, "Sadness", {4}, {}, "An emotional state of unhappiness or sorrow.", "Sign or Symptom",
         nullptr},
        {61, "MuscleTension", {4}, {}, "Sustained tightening of muscles under stress.",
         "Sign or Symptom", nullptr},
        {62, "AppetiteChange", {4}, {}, "An increase or decrease in appetite under stress.",
         "Sign or Symptom", nullptr},
        {63, "Frustration", {4}, {}, "Distress from being blocked from a goal.",
         "Sign or Symptom", nullptr},
        {64, "SocialWithdrawal", {4}, {}, "Avoiding social contact in response to stress.",
         "Sign or Symptom", nullptr},

        // Interventions
        {70, "CognitiveBehavioralTherapy", {5}, {"CBT"},
         "A structured psychotherapy that modifies unhelpful thoughts and behaviors.",
         "Therapeutic or Preventive Procedure", nullptr},
        {71, "RelaxationTraining", {5}, {},
         "Teaching techniques that elicit the relaxation response.",
         "Therapeutic or Preventive Procedure", nullptr},
        {72, "MindfulnessTraining", {5}, {},
         "Teaching present-moment, nonjudgmental attention.",
         "Therapeutic or Preventive Procedure", nullptr},
        {73, "Psychoeducation", {5}, {},
         "Providing structured information about stress and its management.",
         "Therapeutic or Preventive Procedure", nullptr},
        {74, "StressManagementProgram", {5}, {},
         "An organized multi-session program for reducing stress.",
         "Therapeutic or Preventive Procedure", nullptr},
        {75, "Counseling", {5}, {},
         "Guidance from a trained professional to address stress.",
         "Therapeutic or Preventive Procedure", nullptr},

        // Coping strategies
        {80, "Exercise", {6}, {"physical activity"},
         "Physical activity performed to manage stress.", "Mental Process", "운동"},
        {81, "Meditation", {6}, {}, "Focusing attention to achieve mental calm.", "Mental Process",
         "명상"},
        {82, "HelpSeeking", {6}, {"seeking help"},
         "Explicitly asking others for advice or assistance.", "Mental Process", nullptr},
        {83, "Venting", {6}, {}, "Expressing negative feelings to release tension.",
         "Mental Process", nullptr},
        {84, "ProblemSolving", {6}, {},
         "Taking direct action to resolve the source of stress.", "Mental Process", nullptr},
        {85, "PositiveReframing", {6}, {},
         "Reinterpreting a stressful situation in a positive light.", "Mental Process", nullptr},
        {86, "Acceptance", {6}, {}, "Acknowledging a stressful reality without struggle.",
         "Mental Process", nullptr},
        {87, "Distraction", {6}, {}, "Shifting attention away from the stressor.",
         "Mental Process", nullptr},
        {88, "SubstanceUse", {6}, {}, "Using alcohol or drugs to cope with stress.",
         "Mental Process", nullptr},
        {89, "ReligiousCoping", {6}, {}, "Turning to faith or spiritual practice to cope.",
         "Mental Process", nullptr},
        {90, "Planning", {6}, {}, "Thinking through steps to handle the stressor.",
         "Mental Process", nullptr},

        // Coping outcomes
        {95, "StressRelief", {7}, {}, "A reduction in experienced stress.", "Finding", nullptr},
        {96, "Adaptation", {7}, {}, "Successful adjustment to ongoing demands.", "Finding",
         nullptr},
        {97, "PostTraumaticGrowth", {7}, {},
         "Positive psychological change following adversity.", "Finding", nullptr},
        {98, "Recovery", {7}, {}, "Return to baseline functioning after stress.", "Finding",
         nullptr},
        {99, "Burnout", {57, 7}, {},
         "A state of exhaustion from prolonged unresolved stress.", "Finding", nullptr},

        // Characteristics
        {100, "SuddenOnset", {8}, {}, "Stress that begins abruptly.", "Temporal Concept", nullptr},
        {101, "GradualOnset", {8}, {}, "Stress that builds up slowly over time.",
         "Temporal Concept", nullptr},
        {102, "AcuteStress", {8}, {}, "Short-term stress with a clear start and end.",
         "Temporal Concept", nullptr},
        {103, "ChronicStress", {8}, {}, "Stress persisting over a long period.",
         "Temporal Concept", nullptr},
        {104, "EpisodicStress", {8}, {}, "Stress recurring in repeated episodes.",
         "Temporal Concept", nullptr},
    };

    Ontology o;
    o.name = "MeSO Seed";
    o.version = "1.0.0";
    for (const auto& row : rows) {
        Concept c;
        c.id = ConceptId(strong_id(row.id));
        c.label = row.label;
        for (int p : row.parents) c.parent_ids.push_back(ConceptId(strong_id(p)));
        for (const char* s : row.synonyms) c.synonyms.emplace_back(s);
        c.definition = row.definition;
        c.umls_cui = cui_for(row.id);
        c.umls_preferred_name = spaced_lower(row.label);
        c.umls_semantic_type = row.semantic_type;
        if (row.translation_ko) c.translation_ko = row.translation_ko;
        c.source_language = "en";
        o.add_concept(std::move(c));
    }
    return o;
}

} // namespace meso
