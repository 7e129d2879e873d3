#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "norma/common.hpp"
#include "norma/corpus.hpp"
#include "norma/unicode.hpp"

namespace norma {

// Unit-cost edit distance over Unicode scalar values after NFC.
inline std::size_t levenshtein(const std::string& a, const std::string& b) {
    const u32string s = nfc(utf8_decode(a));
    const u32string t = nfc(utf8_decode(b));
    if (s.empty()) return t.size();
    if (t.empty()) return s.size();

    std::vector<std::size_t> row(t.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= s.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= t.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = s[i - 1] == t[j - 1]
                         ? diag
                         : 1 + std::min({diag, up, row[j - 1]});
            diag = up;
        }
    }
    return row[t.size()];
}

inline std::size_t ref_char_count(const std::string& ref) {
    return nfc(utf8_decode(ref)).size();
}

// Micro-averaged CER: 100 * total edits / total reference characters.
inline double corpus_cer(const std::vector<std::string>& hyps,
                         const std::vector<std::string>& refs) {
    if (hyps.size() != refs.size())
        throw DataError("hypothesis/reference count mismatch: " + std::to_string(hyps.size()) +
                        " vs " + std::to_string(refs.size()));
    std::size_t edits = 0, chars = 0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        edits += levenshtein(hyps[i], refs[i]);
        chars += ref_char_count(refs[i]);
    }
    if (chars == 0) throw DataError("reference corpus has zero characters");
    return 100.0 * static_cast<double>(edits) / static_cast<double>(chars);
}

// CER of emitting the input unchanged; the floor a normalizer must beat.
inline double copy_baseline_cer(const ParallelCorpus& corpus) {
    std::vector<std::string> sources, targets;
    sources.reserve(corpus.size());
    targets.reserve(corpus.size());
    for (const auto& p : corpus.pairs) {
        sources.push_back(p.source);
        targets.push_back(p.target);
    }
    return corpus_cer(sources, targets);
}

struct TagStats {
    std::size_t pairs = 0;
    std::size_t ref_chars = 0;
    std::size_t edits = 0;

    double cer() const {
        return ref_chars == 0 ? 0.0
                              : 100.0 * static_cast<double>(edits) / static_cast<double>(ref_chars);
    }
};

struct CerReport {
    std::map<std::string, TagStats> tags;
    TagStats joint;                       // union test set, micro-averaged
    double copy_baseline = 0.0;
    std::string config_digest;

    double per_tag_mean() const {
        if (tags.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& [_, st] : tags) sum += st.cer();
        return sum / static_cast<double>(tags.size());
    }
};

// Evaluates a normalizer callable (string -> string) against a tagged test
// corpus, grouping CER per tag plus a joint micro-averaged row.
template <typename Normalizer>
CerReport evaluate_with(Normalizer&& normalize, const ParallelCorpus& test) {
    CerReport report;
    std::size_t index = 0;
    for (const auto& p : test.pairs) {
        std::string hyp;
        try {
            hyp = normalize(p.source);
        } catch (const Error& e) {
            throw DataError("normalization failed on pair " + std::to_string(index) + ": " +
                            e.what());
        }
        const std::size_t edits = levenshtein(hyp, p.target);
        const std::size_t chars = ref_char_count(p.target);
        auto& st = report.tags[p.tag];
        st.pairs += 1;
        st.ref_chars += chars;
        st.edits += edits;
        report.joint.pairs += 1;
        report.joint.ref_chars += chars;
        report.joint.edits += edits;
        ++index;
    }
    if (report.joint.ref_chars == 0) throw DataError("test corpus has zero reference characters");
    report.copy_baseline = copy_baseline_cer(test);
    return report;
}

inline nlohmann::json report_to_json(const CerReport& report) {
    nlohmann::json tags = nlohmann::json::object();
    for (const auto& [tag, st] : report.tags)
        tags[tag] = {{"cer", st.cer()},
                     {"pairs", st.pairs},
                     {"ref_chars", st.ref_chars},
                     {"edits", st.edits}};
    return {{"tags", tags},
            {"joint",
             {{"cer", report.joint.cer()},
              {"pairs", report.joint.pairs},
              {"ref_chars", report.joint.ref_chars},
              {"edits", report.joint.edits}}},
            {"per_tag_mean_cer", report.per_tag_mean()},
            {"copy_baseline_cer", report.copy_baseline},
            {"aggregation", "micro"},
            {"config_digest", report.config_digest}};
}

// Column order of the paper-style tables: P, B, C, G first, other tags in
// sorted order, Joint last.
inline std::vector<std::string> report_columns(const CerReport& report) {
    std::vector<std::string> cols;
    for (const char* t : {"P", "B", "C", "G"})
        if (report.tags.count(t)) cols.emplace_back(t);
    for (const auto& [tag, _] : report.tags)
        if (std::find(cols.begin(), cols.end(), tag) == cols.end()) cols.push_back(tag);
    return cols;
}

inline std::string format_report_table(const CerReport& report,
                                       const std::string& row_label = "Model") {
    const auto cols = report_columns(report);
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);

    const std::size_t label_w = std::max<std::size_t>(row_label.size(), 13);
    out << std::left << std::setw(static_cast<int>(label_w)) << "" << std::right;
    for (const auto& c : cols) out << std::setw(8) << c;
    out << std::setw(8) << "Joint" << "\n";

    out << std::left << std::setw(static_cast<int>(label_w)) << row_label << std::right;
    for (const auto& c : cols) out << std::setw(8) << report.tags.at(c).cer();
    out << std::setw(8) << report.joint.cer() << "\n";

    out << std::left << std::setw(static_cast<int>(label_w)) << "Copy baseline" << std::right;
    for (std::size_t i = 0; i < cols.size(); ++i) out << std::setw(8) << "";
    out << std::setw(8) << report.copy_baseline << "\n";
    return out.str();
}

} // namespace norma
