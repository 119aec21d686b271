#pragma once

#include <string>
#include <vector>

#include "viasnet/corpus/types.hpp"

namespace viasnet::corpus {

struct VideoPaths {
    std::string frames;     // VSAL1, 3-channel source frames
    std::string audio;      // mono WAV
    std::string gaze;       // raw gaze CSV
    std::string truth;      // generator truth JSON (synthetic corpora only)
    std::string truth_maps; // VSAL1 probability container of the true field
    std::string captions;   // caption JSON array
    std::string fixations;  // IVT output CSV
    std::string gt_maps;    // VSAL1 probability container
};

struct ManifestVideo {
    VideoAdMeta meta;
    VideoPaths paths;
    std::vector<SceneRange> scenes; // empty until scene detection runs
    std::string split;              // "train" | "test" | ""
};

struct Manifest {
    uint64_t seed = 0;
    std::string profile;
    int64_t map_height = 0, map_width = 0;
    std::vector<ManifestVideo> videos;
    std::string root_dir; // directory of the manifest file; not serialized

    std::string resolve(const std::string& rel) const;
    const ManifestVideo& video(const std::string& id) const;
};

void save_manifest(const std::string& path, const Manifest& m);
Manifest load_manifest(const std::string& path);

// Existence + header checks on every referenced file that is expected at the
// current pipeline stage (empty path fields are skipped).
void validate_manifest(const Manifest& m);

// Deterministic video-level 80/20-style split: floor(n * test_fraction) test
// videos, at least one.
void split_corpus(Manifest& m, double test_fraction, uint64_t seed);

} // namespace viasnet::corpus
