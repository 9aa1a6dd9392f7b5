#include "phasic/core/image.hpp"

#include "phasic/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace phasic {

namespace {

void check_dims(int width, int height, const char* what) {
    if (width < 1 || height < 1) {
        throw InvalidArgument(std::string(what) + ": dimensions must be >= 1, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Matrix::Matrix(int width, int height, double fill)
    : width_(width), height_(height) {
    check_dims(width, height, "Matrix");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Matrix::Matrix(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "Matrix");
    if (data_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("Matrix: data length does not match dimensions");
    }
}

double Matrix::min() const { return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end()); }
double Matrix::max() const { return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end()); }
double Matrix::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

ImageMatrix::ImageMatrix(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
    check_dims(width, height, "ImageMatrix");
    if (channels != 1 && channels != 3) throw InvalidArgument("ImageMatrix: channels must be 1 or 3");
    data_.assign(plane_size() * channels, fill);
    validate();
}

ImageMatrix::ImageMatrix(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height, "ImageMatrix");
    if (channels != 1 && channels != 3) throw InvalidArgument("ImageMatrix: channels must be 1 or 3");
    if (data_.size() != plane_size() * channels) {
        throw InvalidArgument("ImageMatrix: data length does not match dimensions");
    }
    validate();
}

void ImageMatrix::validate() const {
    for (double v : data_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw InvalidArgument("ImageMatrix: value outside [0,1]: " + std::to_string(v));
        }
    }
}

ImageMatrix ImageMatrix::from_plane(const Matrix& plane) {
    return ImageMatrix(plane.width(), plane.height(), 1, plane.data());
}

ImageMatrix ImageMatrix::from_planes(const std::vector<Matrix>& planes) {
    if (planes.size() != 1 && planes.size() != 3) throw InvalidArgument("ImageMatrix: expected 1 or 3 planes");
    const int w = planes.front().width();
    const int h = planes.front().height();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(w) * h * planes.size());
    for (const auto& p : planes) {
        if (p.width() != w || p.height() != h) throw InvalidArgument("ImageMatrix: plane dimensions differ");
        data.insert(data.end(), p.data().begin(), p.data().end());
    }
    return ImageMatrix(w, h, static_cast<int>(planes.size()), std::move(data));
}

Matrix ImageMatrix::plane(int c) const {
    if (c < 0 || c >= channels_) throw InvalidArgument("ImageMatrix: channel out of range");
    auto v = plane_view(c);
    return Matrix(width_, height_, std::vector<double>(v.begin(), v.end()));
}

BinaryMask::BinaryMask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height, "BinaryMask");
    if (fill > 1) throw InvalidArgument("BinaryMask: values must be 0 or 1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "BinaryMask");
    if (data_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("BinaryMask: data length does not match dimensions");
    }
    if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; })) {
        throw InvalidArgument("BinaryMask: values must be 0 or 1");
    }
}

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

SaliencyMap::SaliencyMap(Matrix values) : values_(std::move(values)) {
    for (double v : values_.data()) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw InvalidArgument("SaliencyMap: value outside [0,1]: " + std::to_string(v));
        }
    }
}

SaliencyMap SaliencyMap::normalized(const Matrix& raw, double degenerate_range) {
    Matrix out(raw.width(), raw.height(), 0.0);
    for (double v : raw.data()) {
        if (!std::isfinite(v)) throw InvalidArgument("SaliencyMap: non-finite raw value");
    }
    const double lo = raw.min();
    const double hi = raw.max();
    if (hi - lo > degenerate_range) {
        const double range = hi - lo;
        auto& d = out.data();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::clamp((raw.data()[i] - lo) / range, 0.0, 1.0);
    }
    return SaliencyMap(std::move(out));
}

bool SaliencyMap::all_zero() const {
    return std::all_of(values_.data().begin(), values_.data().end(), [](double v) { return v == 0.0; });
}

}  // namespace phasic
