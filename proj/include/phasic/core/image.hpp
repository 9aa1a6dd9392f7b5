#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phasic {

/// Dense single-channel real raster, row-major. Values are unconstrained;
/// this is the working type for filters, transforms and feature maps.
class Matrix {
public:
    Matrix() = default;
    Matrix(int width, int height, double fill = 0.0);
    Matrix(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::span<double> row(int y) { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }
    std::span<const double> row(int y) const { return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)}; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    double min() const;
    double max() const;
    double sum() const;
    double mean() const { return empty() ? 0.0 : sum() / static_cast<double>(size()); }

    bool operator==(const Matrix&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Plot raster with 1 or 3 channels, planar storage (channel-major, each plane
/// row-major). Every value lies in [0,1].
class ImageMatrix {
public:
    ImageMatrix() = default;
    ImageMatrix(int width, int height, int channels, double fill = 0.0);
    ImageMatrix(int width, int height, int channels, std::vector<double> data);

    static ImageMatrix from_plane(const Matrix& plane);
    static ImageMatrix from_planes(const std::vector<Matrix>& planes);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t plane_size() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    double& at(int x, int y, int c = 0) { return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y, int c = 0) const { return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x]; }

    Matrix plane(int c) const;
    std::span<const double> plane_view(int c) const { return {data_.data() + c * plane_size(), plane_size()}; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    bool operator==(const ImageMatrix&) const = default;

private:
    void validate() const;

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

/// Binary raster, every value exactly 0 or 1.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, std::uint8_t fill = 0);
    BinaryMask(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    std::uint8_t at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int x, int y, bool on) { data_[static_cast<std::size_t>(y) * width_ + x] = on ? 1 : 0; }

    const std::vector<std::uint8_t>& data() const noexcept { return data_; }
    std::size_t count() const;

    bool operator==(const BinaryMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Continuous saliency in [0,1]. Maps built with normalized() have max 1 unless all-zero.
class SaliencyMap {
public:
    SaliencyMap() = default;
    /// Values must already lie in [0,1].
    explicit SaliencyMap(Matrix values);

    /// Min-max stretch to [0,1]; ranges below `degenerate_range` give an all-zero map.
    static SaliencyMap normalized(const Matrix& raw, double degenerate_range = 1e-12);

    int width() const noexcept { return values_.width(); }
    int height() const noexcept { return values_.height(); }
    double at(int x, int y) const { return values_.at(x, y); }
    const Matrix& values() const noexcept { return values_; }
    bool all_zero() const;

private:
    Matrix values_;
};

}  // namespace phasic
