#include "phasic/core/io.hpp"

#include "phasic/core/error.hpp"

#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>

namespace phasic {

namespace {

const std::vector<int>& png_params() {
    // Fixed compression settings keep the byte stream reproducible.
    static const std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6, cv::IMWRITE_PNG_STRATEGY,
                                         cv::IMWRITE_PNG_STRATEGY_DEFAULT};
    return params;
}

void write_mat(const std::filesystem::path& path, const cv::Mat& mat) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    if (!cv::imwrite(path.string(), mat, png_params())) throw Error("failed to write PNG: " + path.string());
}

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

}  // namespace

ImageMatrix read_png(const std::filesystem::path& path) {
    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty()) throw Error("failed to read image: " + path.string());
    const double scale = raw.depth() == CV_16U ? 65535.0 : 255.0;
    if (raw.depth() != CV_8U && raw.depth() != CV_16U) throw InvalidArgument("unsupported PNG bit depth: " + path.string());

    const int w = raw.cols, h = raw.rows;
    const int src_channels = raw.channels();
    const int channels = src_channels >= 3 ? 3 : 1;
    std::vector<double> data(static_cast<std::size_t>(w) * h * channels);
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                // OpenCV stores BGR(A); planes are RGB.
                const int src_c = channels == 3 ? 2 - c : 0;
                const double v = raw.depth() == CV_16U ? raw.ptr<std::uint16_t>(y)[x * src_channels + src_c]
                                                       : raw.ptr<std::uint8_t>(y)[x * src_channels + src_c];
                data[c * plane + static_cast<std::size_t>(y) * w + x] = v / scale;
            }
        }
    }
    return ImageMatrix(w, h, channels, std::move(data));
}

void write_png(const std::filesystem::path& path, const ImageMatrix& img) {
    const int channels = img.channels();
    cv::Mat mat(img.height(), img.width(), channels == 3 ? CV_8UC3 : CV_8UC1);
    for (int y = 0; y < img.height(); ++y) {
        auto* row = mat.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width(); ++x) {
            for (int c = 0; c < channels; ++c) {
                const int dst_c = channels == 3 ? 2 - c : 0;
                row[x * channels + dst_c] = to_byte(img.at(x, y, c));
            }
        }
    }
    write_mat(path, mat);
}

void write_png(const std::filesystem::path& path, const SaliencyMap& map) {
    cv::Mat mat(map.height(), map.width(), CV_8UC1);
    for (int y = 0; y < map.height(); ++y) {
        auto* row = mat.ptr<std::uint8_t>(y);
        for (int x = 0; x < map.width(); ++x) row[x] = to_byte(map.at(x, y));
    }
    write_mat(path, mat);
}

void write_png(const std::filesystem::path& path, const BinaryMask& mask) {
    cv::Mat mat(mask.height(), mask.width(), CV_8UC1);
    for (int y = 0; y < mask.height(); ++y) {
        auto* row = mat.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width(); ++x) row[x] = mask.at(x, y) ? 255 : 0;
    }
    write_mat(path, mat);
}

BinaryMask read_mask_png(const std::filesystem::path& path) {
    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (raw.empty()) throw Error("failed to read mask: " + path.string());
    std::vector<std::uint8_t> data(static_cast<std::size_t>(raw.cols) * raw.rows);
    for (int y = 0; y < raw.rows; ++y) {
        const auto* row = raw.ptr<std::uint8_t>(y);
        for (int x = 0; x < raw.cols; ++x) data[static_cast<std::size_t>(y) * raw.cols + x] = row[x] >= 128 ? 1 : 0;
    }
    return BinaryMask(raw.cols, raw.rows, std::move(data));
}

}  // namespace phasic
