#pragma once

#include "meso/extraction.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace meso {

enum class ReviewLabel { Unlabeled, Correct, Incorrect, Missed };

std::string to_string(ReviewLabel label); // Unlabeled -> ""
ReviewLabel review_label_from_string(const std::string& s);

struct ReviewRow {
    std::string post_id;
    InfoCategory category = InfoCategory::Stressor;
    // 0-based item position within (post, category); "M<k>" for rows the
    // reviewer added for missed information.
    std::string item_index;
    std::string phrase;
    ReviewLabel label = ReviewLabel::Unlabeled;
    bool hallucination = false;
    std::string note;

    bool is_missed_row() const { return !item_index.empty() && item_index[0] == 'M'; }
    bool operator==(const ReviewRow&) const = default;
};

using ReviewSheet = std::vector<ReviewRow>;

// One unlabeled row per extracted item, ordered by (post_id, category,
// item index).
ReviewSheet init_review_sheet(const std::vector<ExtractionRecord>& records);

// CSV with header "post_id,category,item_index,phrase,label,hallucination,note".
std::string review_sheet_to_csv(const ReviewSheet& sheet);
ReviewSheet review_sheet_from_csv(const std::string& csv);
ReviewSheet review_sheet_from_file(const std::filesystem::path& path);

struct CategoryMetrics {
    InfoCategory category = InfoCategory::Stressor;
    int correct = 0;
    int incorrect = 0;
    int missed = 0;
    int hallucinations = 0;

    int row_total() const { return correct + incorrect + missed; }
    // Percentage of row_total in hundredths, round half up (8125 = 81.25%).
    int percent_hundredths(int count) const;
    static std::string percent_text(int hundredths); // "81.25"
};

struct MetricsReport {
    std::vector<CategoryMetrics> categories; // one per InfoCategory, fixed order
    CategoryMetrics overall; // column sums
    std::optional<double> kappa;

    std::string to_json() const;
};

// Tallies a fully labeled, adjudicated sheet into the per-category
// correct/incorrect/missed matrix. Throws on unlabeled rows or rows marked
// hallucination but not Incorrect.
MetricsReport score_reviews(const ReviewSheet& sheet);

enum class KappaWeights { Linear, Quadratic };

// Raised when expected disagreement is zero (e.g. both raters constant),
// which leaves kappa undefined.
class KappaDegenerateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Cohen's weighted kappa over an ordered category list:
//   kappa = 1 - sum(w*observed) / sum(w*expected)
// with linear weights |i-j|/(C-1) or their squares.
double weighted_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      KappaWeights weights, const std::vector<std::string>& categories);

// Same, with an explicit CxC disagreement-weight matrix (zero diagonal,
// nonnegative entries).
double weighted_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const std::vector<std::vector<double>>& weight_matrix,
                      const std::vector<std::string>& categories);

// Convenience for review sheets: Linear/Quadratic kappa over the ordered
// label list [Correct, Incorrect, Missed]. The sheets must align row by row.
double review_sheet_kappa(const ReviewSheet& a, const ReviewSheet& b, KappaWeights weights);

struct UnmappedCategory {
    InfoCategory category = InfoCategory::Stressor;
    int count = 0; // unmapped items before dedup
    std::vector<std::string> unique_phrases; // first surface form per normalized term
};

struct UnmappedReport {
    int total_unmapped = 0; // all items with match category None
    int duration_excluded = 0; // numeric durations, outside ontology mapping
    std::vector<UnmappedCategory> categories; // non-duration categories, fixed order

    int unique_total() const;
    std::string to_json() const;
};

UnmappedReport unmapped_report(const std::vector<ExtractionRecord>& records);

} // namespace meso
