#include "meso/evaluation.hpp"

#include "meso/io.hpp"
#include "meso/text.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <set>

namespace meso {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ReviewLabel label) {
    switch (label) {
    case ReviewLabel::Unlabeled: return "";
    case ReviewLabel::Correct: return "Correct";
    case ReviewLabel::Incorrect: return "Incorrect";
    case ReviewLabel::Missed: return "Missed";
    }
    return "?";
}

ReviewLabel review_label_from_string(const std::string& s) {
    if (s.empty()) return ReviewLabel::Unlabeled;
    if (s == "Correct") return ReviewLabel::Correct;
    if (s == "Incorrect") return ReviewLabel::Incorrect;
    if (s == "Missed") return ReviewLabel::Missed;
    throw std::invalid_argument("unknown review label: '" + s + "'");
}

ReviewSheet init_review_sheet(const std::vector<ExtractionRecord>& records) {
    ReviewSheet sheet;
    for (const auto& record : records) {
        std::map<InfoCategory, int> next_index;
        for (const auto& item : record.items) {
            ReviewRow row;
            row.post_id = record.post_id;
            row.category = item.category;
            row.item_index = std::to_string(next_index[item.category]++);
            row.phrase = item.phrase;
            sheet.push_back(std::move(row));
        }
    }
    std::stable_sort(sheet.begin(), sheet.end(), [](const ReviewRow& a, const ReviewRow& b) {
        if (a.post_id != b.post_id) return a.post_id < b.post_id;
        if (a.category != b.category) return a.category < b.category;
        return std::stoi(a.item_index) < std::stoi(b.item_index);
    });
    return sheet;
}

namespace {

// RFC-4180-style escaping; fields with commas, quotes, or newlines are quoted.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

// Character-level CSV reader: quoted fields may contain commas, escaped
// quotes, and newlines.
std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool field_started = false;
    auto end_field = [&] {
        fields.push_back(std::move(current));
        current.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(fields));
        fields.clear();
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            end_row();
        } else {
            current.push_back(c);
            field_started = true;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quote in CSV input");
    if (field_started || !fields.empty()) end_row();
    // A trailing newline leaves one empty single-field row; drop blank rows.
    std::vector<std::vector<std::string>> cleaned;
    for (auto& row : rows)
        if (!(row.size() == 1 && row[0].empty())) cleaned.push_back(std::move(row));
    return cleaned;
}

const char* review_header = "post_id,category,item_index,phrase,label,hallucination,note";

} // namespace

std::string review_sheet_to_csv(const ReviewSheet& sheet) {
    std::string out = review_header;
    out += "\n";
    for (const auto& row : sheet) {
        out += csv_escape(row.post_id) + ",";
        out += to_string(row.category) + ",";
        out += row.item_index + ",";
        out += csv_escape(row.phrase) + ",";
        out += to_string(row.label) + ",";
        out += row.hallucination ? "true" : "false";
        out += ",";
        out += csv_escape(row.note);
        out += "\n";
    }
    return out;
}

ReviewSheet review_sheet_from_csv(const std::string& csv) {
    auto rows = csv_parse(csv);
    if (rows.empty()) throw std::invalid_argument("empty review sheet");
    std::string header;
    for (size_t i = 0; i < rows[0].size(); ++i) {
        if (i) header += ",";
        header += rows[0][i];
    }
    if (header != review_header)
        throw std::invalid_argument("review sheet header must be exactly '" +
                                    std::string(review_header) + "'");
    ReviewSheet sheet;
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto& fields = rows[i];
        if (fields.size() != 7)
            throw std::invalid_argument("expected 7 fields in CSV row " + std::to_string(i + 1) +
                                        ", got " + std::to_string(fields.size()));
        ReviewRow row;
        row.post_id = fields[0];
        row.category = info_category_from_string(fields[1]);
        row.item_index = fields[2];
        row.phrase = fields[3];
        row.label = review_label_from_string(fields[4]);
        if (fields[5] == "true") row.hallucination = true;
        else if (fields[5] == "false") row.hallucination = false;
        else
            throw std::invalid_argument("hallucination must be true/false in CSV row " +
                                        std::to_string(i + 1));
        row.note = fields[6];
        // Missed rows are exactly the reviewer-added rows (M<k> marker).
        bool missed_marker = row.is_missed_row();
        if (missed_marker && row.label != ReviewLabel::Missed)
            throw std::invalid_argument("M<k> rows must be labeled Missed (line " +
                                        std::to_string(i + 1) + ")");
        if (!missed_marker && row.label == ReviewLabel::Missed)
            throw std::invalid_argument("label Missed requires an M<k> item_index (line " +
                                        std::to_string(i + 1) + ")");
        sheet.push_back(std::move(row));
    }
    return sheet;
}

ReviewSheet review_sheet_from_file(const std::filesystem::path& path) {
    return review_sheet_from_csv(read_file(path));
}

int CategoryMetrics::percent_hundredths(int count) const {
    int total = row_total();
    if (total == 0) return 0;
    long long a = 10000LL * count;
    long long b = total;
    return static_cast<int>((2 * a + b) / (2 * b)); // round half up
}

std::string CategoryMetrics::percent_text(int hundredths) {
    std::string frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) frac = "0" + frac;
    return std::to_string(hundredths / 100) + "." + frac;
}

MetricsReport score_reviews(const ReviewSheet& sheet) {
    MetricsReport report;
    std::map<InfoCategory, CategoryMetrics> per_category;
    for (InfoCategory c : all_info_categories) per_category[c].category = c;

    for (const auto& row : sheet) {
        if (row.hallucination && row.label != ReviewLabel::Incorrect)
            throw std::invalid_argument("hallucination rows must be labeled Incorrect (post " +
                                        row.post_id + ")");
        CategoryMetrics& m = per_category[row.category];
        switch (row.label) {
        case ReviewLabel::Correct: m.correct += 1; break;
        case ReviewLabel::Incorrect: m.incorrect += 1; break;
        case ReviewLabel::Missed: m.missed += 1; break;
        case ReviewLabel::Unlabeled:
            throw std::invalid_argument("unlabeled review row (post " + row.post_id +
                                        ", category " + to_string(row.category) + ", item " +
                                        row.item_index + ")");
        }
        if (row.hallucination) m.hallucinations += 1;
    }

    report.overall.category = InfoCategory::Stressor; // unused for the overall row
    for (InfoCategory c : all_info_categories) {
        const CategoryMetrics& m = per_category[c];
        report.categories.push_back(m);
        report.overall.correct += m.correct;
        report.overall.incorrect += m.incorrect;
        report.overall.missed += m.missed;
        report.overall.hallucinations += m.hallucinations;
    }
    return report;
}

std::string MetricsReport::to_json() const {
    ordered_json doc;
    doc["categories"] = ordered_json::array();
    auto row_json = [](const CategoryMetrics& m) {
        ordered_json row;
        row["correct"] = m.correct;
        row["incorrect"] = m.incorrect;
        row["missed"] = m.missed;
        row["row_total"] = m.row_total();
        row["correct_pct"] = m.percent_hundredths(m.correct) / 100.0;
        row["incorrect_pct"] = m.percent_hundredths(m.incorrect) / 100.0;
        row["missed_pct"] = m.percent_hundredths(m.missed) / 100.0;
        row["hallucinations"] = m.hallucinations;
        return row;
    };
    for (const auto& m : categories) {
        ordered_json row = row_json(m);
        ordered_json named;
        named["category"] = to_string(m.category);
        named.update(row);
        doc["categories"].push_back(std::move(named));
    }
    doc["overall"] = row_json(overall);
    doc["kappa"] = kappa ? ordered_json(*kappa) : ordered_json(nullptr);
    return doc.dump(2) + "\n";
}

namespace {

double kappa_from_table(const std::vector<std::vector<long long>>& table, long long n,
                        const std::vector<std::vector<double>>& w) {
    size_t c = table.size();
    std::vector<double> row_marginal(c, 0.0), col_marginal(c, 0.0);
    for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < c; ++j) {
            row_marginal[i] += static_cast<double>(table[i][j]);
            col_marginal[j] += static_cast<double>(table[i][j]);
        }
    double observed = 0.0, expected = 0.0;
    for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < c; ++j) {
            observed += w[i][j] * static_cast<double>(table[i][j]) / static_cast<double>(n);
            expected += w[i][j] * (row_marginal[i] / static_cast<double>(n)) *
                        (col_marginal[j] / static_cast<double>(n));
        }
    if (expected == 0.0)
        throw KappaDegenerateError("expected disagreement is zero; kappa is undefined");
    return 1.0 - observed / expected;
}

std::vector<std::vector<long long>> contingency(const std::vector<std::string>& a,
                                                const std::vector<std::string>& b,
                                                const std::vector<std::string>& categories) {
    if (a.size() != b.size())
        throw std::invalid_argument("rater label lists differ in length: " +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (a.empty()) throw std::invalid_argument("no labels to compare");
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < categories.size(); ++i) index[categories[i]] = i;
    if (index.size() != categories.size())
        throw std::invalid_argument("category list contains duplicates");
    std::vector<std::vector<long long>> table(categories.size(),
                                              std::vector<long long>(categories.size(), 0));
    for (size_t k = 0; k < a.size(); ++k) {
        auto ia = index.find(a[k]);
        auto ib = index.find(b[k]);
        if (ia == index.end())
            throw std::invalid_argument("label '" + a[k] + "' is outside the category list");
        if (ib == index.end())
            throw std::invalid_argument("label '" + b[k] + "' is outside the category list");
        table[ia->second][ib->second] += 1;
    }
    return table;
}

} // namespace

double weighted_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      KappaWeights weights, const std::vector<std::string>& categories) {
    if (categories.size() < 2)
        throw std::invalid_argument("weighted kappa needs at least two categories");
    size_t c = categories.size();
    std::vector<std::vector<double>> w(c, std::vector<double>(c, 0.0));
    for (size_t i = 0; i < c; ++i)
        for (size_t j = 0; j < c; ++j) {
            double linear = std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                            static_cast<double>(c - 1);
            w[i][j] = weights == KappaWeights::Linear ? linear : linear * linear;
        }
    auto table = contingency(a, b, categories);
    return kappa_from_table(table, static_cast<long long>(a.size()), w);
}

double weighted_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const std::vector<std::vector<double>>& weight_matrix,
                      const std::vector<std::string>& categories) {
    size_t c = categories.size();
    if (weight_matrix.size() != c)
        throw std::invalid_argument("weight matrix must be CxC for C categories");
    for (size_t i = 0; i < c; ++i) {
        if (weight_matrix[i].size() != c)
            throw std::invalid_argument("weight matrix must be CxC for C categories");
        if (weight_matrix[i][i] != 0.0)
            throw std::invalid_argument("weight matrix diagonal must be zero");
        for (double x : weight_matrix[i])
            if (x < 0.0) throw std::invalid_argument("weights must be nonnegative");
    }
    auto table = contingency(a, b, categories);
    return kappa_from_table(table, static_cast<long long>(a.size()), weight_matrix);
}

double review_sheet_kappa(const ReviewSheet& a, const ReviewSheet& b, KappaWeights weights) {
    if (a.size() != b.size())
        throw std::invalid_argument("review sheets differ in row count");
    std::vector<std::string> la, lb;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].post_id != b[i].post_id || a[i].category != b[i].category ||
            a[i].item_index != b[i].item_index)
            throw std::invalid_argument("review sheets do not align at row " +
                                        std::to_string(i + 1));
        la.push_back(to_string(a[i].label));
        lb.push_back(to_string(b[i].label));
    }
    return weighted_kappa(la, lb, weights, {"Correct", "Incorrect", "Missed"});
}

int UnmappedReport::unique_total() const {
    int total = 0;
    for (const auto& c : categories) total += static_cast<int>(c.unique_phrases.size());
    return total;
}

UnmappedReport unmapped_report(const std::vector<ExtractionRecord>& records) {
    UnmappedReport report;
    std::map<InfoCategory, UnmappedCategory> buckets;
    std::map<InfoCategory, std::set<std::string>> seen_keys;
    for (InfoCategory c : all_info_categories)
        if (c != InfoCategory::StressDuration) buckets[c].category = c;

    for (const auto& record : records) {
        for (const auto& item : record.items) {
            if (item.match_category != MatchCategory::None) continue;
            report.total_unmapped += 1;
            if (item.category == InfoCategory::StressDuration) {
                report.duration_excluded += 1;
                continue;
            }
            UnmappedCategory& bucket = buckets[item.category];
            bucket.count += 1;
            if (seen_keys[item.category].insert(normalized_key(item.phrase)).second)
                bucket.unique_phrases.push_back(item.phrase);
        }
    }
    for (InfoCategory c : all_info_categories)
        if (c != InfoCategory::StressDuration) report.categories.push_back(buckets[c]);
    return report;
}

std::string UnmappedReport::to_json() const {
    ordered_json doc;
    doc["total_unmapped"] = total_unmapped;
    doc["duration_excluded"] = duration_excluded;
    doc["unique_total"] = unique_total();
    doc["categories"] = ordered_json::array();
    for (const auto& c : categories) {
        ordered_json entry;
        entry["category"] = to_string(c.category);
        entry["count"] = c.count;
        entry["unique_phrases"] = c.unique_phrases;
        doc["categories"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

} // namespace meso
