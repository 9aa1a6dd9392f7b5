#include "phasic/eval/folds.hpp"

#include "phasic/core/csv.hpp"
#include "phasic/core/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace phasic::eval {

void FoldPlan::validate() const {
    if (k < 1) throw InvalidArgument("fold plan: k must be >= 1, got " + std::to_string(k));
    for (const auto& [exp, fold] : assignment) {
        if (fold < 0 || fold >= k) {
            throw InvalidArgument("fold plan: experiment " + exp + " has fold " + std::to_string(fold) +
                                  " outside [0, " + std::to_string(k) + ")");
        }
    }
}

int FoldPlan::fold_of(const std::string& experiment_id) const {
    const auto it = assignment.find(experiment_id);
    if (it == assignment.end()) throw ProtocolViolation("fold plan: experiment " + experiment_id + " has no fold");
    return it->second;
}

std::vector<std::string> FoldPlan::experiments_in(int fold) const {
    std::vector<std::string> out;
    for (const auto& [exp, f] : assignment) {
        if (f == fold) out.push_back(exp);
    }
    return out;
}

FoldPlan grouped_kfold(std::span<const data::SampleRecord> samples, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidArgument("grouped_kfold: k must be >= 1, got " + std::to_string(k));
    std::map<std::string, std::size_t> counts;
    for (const auto& s : samples) ++counts[s.experiment_id];
    if (counts.size() < static_cast<std::size_t>(k)) {
        throw InvalidArgument("grouped_kfold: " + std::to_string(counts.size()) + " experiment(s) cannot fill " +
                              std::to_string(k) + " folds");
    }

    std::vector<std::pair<std::string, std::size_t>> order(counts.begin(), counts.end());
    // Fisher-Yates on raw engine output keeps the plan identical across
    // standard library implementations.
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>((rng() >> 11) * 0x1.0p-53 * static_cast<double>(i));
        std::swap(order[i - 1], order[j]);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    FoldPlan plan;
    plan.k = k;
    std::vector<std::size_t> load(k, 0);
    for (const auto& [exp, n] : order) {
        const int f = static_cast<int>(std::min_element(load.begin(), load.end()) - load.begin());
        plan.assignment[exp] = f;
        load[f] += n;
    }
    return plan;
}

FoldSplit split(const FoldPlan& plan, std::span<const data::SampleRecord> samples, int fold) {
    if (fold < 0 || fold >= plan.k) throw InvalidArgument("split: fold " + std::to_string(fold) + " out of range");
    FoldSplit out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        (plan.fold_of(samples[i].experiment_id) == fold ? out.test : out.train).push_back(i);
    }
    return out;
}

void check_grouping(const FoldPlan& plan, std::span<const data::SampleRecord> samples) {
    plan.validate();
    for (int f = 0; f < plan.k; ++f) {
        const FoldSplit s = split(plan, samples, f);
        std::set<std::string> train, test;
        for (auto i : s.train) train.insert(samples[i].experiment_id);
        for (auto i : s.test) test.insert(samples[i].experiment_id);
        for (const auto& e : test) {
            if (train.count(e)) {
                throw ProtocolViolation("fold " + std::to_string(f) + ": experiment " + e +
                                        " is in both train and test");
            }
        }
    }
}

FoldPlan read_fold_plan(const std::filesystem::path& path, int k) {
    const CsvDocument doc = read_csv(path, {"experiment_id", "fold"});
    FoldPlan plan;
    std::map<std::string, std::size_t> first_line;
    int max_fold = -1;
    for (const auto& row : doc.rows) {
        const std::string& exp = row.fields[0];
        if (exp.empty()) throw IngestionError(path.string() + ":" + std::to_string(row.line) + ": empty experiment_id", row.line);
        const int fold = parse_int(row.fields[1], row.line, "fold");
        if (fold < 0) throw IngestionError(path.string() + ":" + std::to_string(row.line) + ": negative fold", row.line);
        const auto [it, inserted] = plan.assignment.emplace(exp, fold);
        if (!inserted) {
            if (it->second != fold) {
                throw ProtocolViolation(path.string() + ":" + std::to_string(row.line) + ": experiment " + exp +
                                        " assigned to fold " + std::to_string(fold) + " but line " +
                                        std::to_string(first_line[exp]) + " assigns fold " +
                                        std::to_string(it->second));
            }
            throw IngestionError(path.string() + ":" + std::to_string(row.line) + ": experiment " + exp +
                                     " listed twice",
                                 row.line);
        }
        first_line[exp] = row.line;
        max_fold = std::max(max_fold, fold);
    }
    plan.k = k > 0 ? k : max_fold + 1;
    if (plan.assignment.empty()) throw IngestionError(path.string() + ": fold plan is empty", 1);
    plan.validate();
    return plan;
}

void write_fold_plan(const std::filesystem::path& path, const FoldPlan& plan) {
    plan.validate();
    std::string text = "experiment_id,fold\n";
    for (const auto& [exp, f] : plan.assignment) text += exp + "," + std::to_string(f) + "\n";
    write_text_file(path, text);
}

}  // namespace phasic::eval
