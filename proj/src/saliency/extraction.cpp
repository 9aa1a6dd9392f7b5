#include "phasic/saliency/extraction.hpp"

#include "phasic/core/error.hpp"

#include <string>
#include <vector>

namespace phasic::saliency {

namespace {

void require_same_dims(const ImageMatrix& o, const BinaryMask& b, const char* what) {
    if (o.width() != b.width() || o.height() != b.height()) {
        throw InvalidArgument(std::string(what) + ": image is " + std::to_string(o.width()) + "x" +
                              std::to_string(o.height()) + " but mask is " + std::to_string(b.width()) + "x" +
                              std::to_string(b.height()));
    }
}

std::string describe(std::string_view sample_id) {
    return sample_id.empty() ? std::string("<unnamed>") : std::string(sample_id);
}

}  // namespace

BinaryMask threshold_mask(const SaliencyMap& map, double t) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("threshold_mask: threshold must lie in (0,1)");
    std::vector<std::uint8_t> bits(map.values().size());
    const auto& v = map.values().data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = v[i] > t ? 1 : 0;
    return BinaryMask(map.width(), map.height(), std::move(bits));
}

ImageMatrix foreground(const ImageMatrix& o, const BinaryMask& b) {
    require_same_dims(o, b, "foreground");
    std::vector<double> out(o.data().size());
    const std::size_t plane = o.plane_size();
    const auto& bits = b.data();
    for (int c = 0; c < o.channels(); ++c) {
        auto src = o.plane_view(c);
        for (std::size_t i = 0; i < plane; ++i) out[c * plane + i] = src[i] * bits[i];
    }
    return ImageMatrix(o.width(), o.height(), o.channels(), std::move(out));
}

ImageMatrix fg_roi(const ImageMatrix& o, const BinaryMask& b, RoiThreshold th, std::string_view sample_id) {
    require_same_dims(o, b, "fg_roi");
    if (th.column < 0.0 || th.row < 0.0) throw InvalidArgument("fg_roi: thresholds must be >= 0");

    const int w = o.width();
    const int h = o.height();
    std::vector<int> keep_cols;
    for (int x = 0; x < w; ++x) {
        double sum = 0.0;
        for (int y = 0; y < h; ++y) sum += b.at(x, y);
        if (!(sum < th.column)) keep_cols.push_back(x);
    }
    std::vector<int> keep_rows;
    for (int y = 0; y < h; ++y) {
        double sum = 0.0;
        for (int x = 0; x < w; ++x) sum += b.at(x, y);
        if (!(sum < th.row)) keep_rows.push_back(y);
    }
    if (keep_cols.empty() || keep_rows.empty()) {
        throw EmptyRoiError("region of interest is empty for sample " + describe(sample_id) + " (" +
                                std::to_string(keep_cols.size()) + " columns, " + std::to_string(keep_rows.size()) +
                                " rows survive)",
                            std::string(sample_id));
    }

    const int ow = static_cast<int>(keep_cols.size());
    const int oh = static_cast<int>(keep_rows.size());
    std::vector<double> out(static_cast<std::size_t>(ow) * oh * o.channels());
    std::size_t i = 0;
    for (int c = 0; c < o.channels(); ++c) {
        for (int y : keep_rows) {
            for (int x : keep_cols) out[i++] = o.at(x, y, c);
        }
    }
    return ImageMatrix(ow, oh, o.channels(), std::move(out));
}

ImageMatrix roi(const ImageMatrix& o, const BinaryMask& b, RoiThreshold th, std::string_view sample_id) {
    return fg_roi(foreground(o, b), b, th, sample_id);
}

}  // namespace phasic::saliency
