#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qanet/error.hpp"

namespace qanet {

struct PipelineConfig {
    std::filesystem::path corpus;
    std::filesystem::path neg_lexicon;
    std::filesystem::path pos_lexicon;
    std::filesystem::path out_dir;
    double tol = 1e-10;
    int max_iter = 10000;
    double threshold = 0.5;
    std::size_t cap = 80;
    std::size_t top_k = 15;
    std::vector<std::filesystem::path> label_files;
    unsigned threads = 1;
};

/// A stage failed; `stage()` names it (e.g. "load_lexicon").
class PipelineError : public Error {
public:
    PipelineError(std::string stage, const std::string &what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}

    const std::string &stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct PipelineResult {
    std::vector<std::filesystem::path> files;
};

/// Throws ValidationError for out-of-range numeric parameters.
void validate(const PipelineConfig &cfg);

/**
 * Full analysis: load inputs, select negative then positive words by
 * eigenvector centrality, corpus statistics, interaction graph, graph
 * metrics, segmentation and label-set reports. Analysis runs over the fully
 * sampled profiles. Each stage's files are written before the next stage
 * starts. On failure every file already written gets a `.partial` suffix and
 * a PipelineError carrying the stage name is thrown.
 */
PipelineResult run_pipeline(const PipelineConfig &cfg);

} // namespace qanet
