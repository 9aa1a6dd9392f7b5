#pragma once

#include "phasic/core/image.hpp"
#include "phasic/saliency/params.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace phasic::saliency {

/// One pixel as seen by the clustering layers.
struct PixelSample {
    std::array<double, 3> feature{};  ///< Lab
    double nx = 0.0;                  ///< column / width, in [0,1]
    double ny = 0.0;                  ///< row / height, in [0,1]
    int image = 0;
};

struct KMeansResult {
    std::vector<std::array<double, 3>> centers;
    std::vector<int> labels;
    int requested_k = 0;  ///< before clamping to the number of distinct features
};

/// Lloyd's k-means with k-means++ seeding from a fixed seed. k is clamped to the
/// number of distinct feature vectors.
KMeansResult kmeans(std::span<const PixelSample> samples, int k, std::uint64_t seed, int max_iterations = 50);

/// 1 minus the variance of the per-image shares of a cluster, normalized by the
/// largest variance possible for that many images. Shares need not sum to 1.
/// Single-image groups always score 1.
double correspondence_cue(std::span<const double> per_image_share);

struct ClusterCues {
    std::vector<double> contrast;       ///< size-weighted feature distance to the other clusters
    std::vector<double> spatial;        ///< mean Gaussian falloff of member distance to the image center
    std::vector<double> corresponding;  ///< evenness of the cluster across the images
};

ClusterCues cluster_cues(std::span<const PixelSample> samples, const KMeansResult& clustering, int image_count,
                         double spatial_sigma);

/// Min-max normalizes each cue and multiplies them per cluster. A cue with no
/// spread maps to 1 where positive and 0 where zero.
std::vector<double> combine_cues(const ClusterCues& cues);

struct CoSaliencyResult {
    std::vector<SaliencyMap> maps;
    std::vector<std::string> warnings;
};

/// Cluster-based co-saliency over a group of RGB images: a single-image
/// clustering layer and a joint layer, scored by contrast, spatial and
/// corresponding cues, multiplied per pixel.
CoSaliencyResult cosaliency(std::span<const ImageMatrix> group, const CoSaliencyParams& params = {});

}  // namespace phasic::saliency
