#include "phasic/saliency/feature_map.hpp"

#include "phasic/core/error.hpp"
#include "phasic/core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phasic::saliency {

OpponencyPlanes opponency_planes(const ImageMatrix& img) {
    const int w = img.width();
    const int h = img.height();
    OpponencyPlanes out{Matrix(w, h), Matrix(w, h), Matrix(w, h)};
    if (img.channels() == 1) {
        out.intensity = img.plane(0);
        return out;
    }
    auto r = img.plane_view(0);
    auto g = img.plane_view(1);
    auto b = img.plane_view(2);
    for (std::size_t i = 0; i < img.plane_size(); ++i) {
        out.intensity.data()[i] = (r[i] + g[i] + b[i]) / 3.0;
        const double m = std::max({r[i], g[i], b[i]});
        if (m < 0.1) continue;
        out.rg.data()[i] = (r[i] - g[i]) / m;
        out.by.data()[i] = (b[i] - std::min(r[i], g[i])) / m;
    }
    return out;
}

Matrix gabor_kernel(double theta_deg, double sigma, double wavelength, double aspect) {
    const int radius = static_cast<int>(std::ceil(2.0 * sigma));
    const int size = 2 * radius + 1;
    const double theta = theta_deg * std::numbers::pi / 180.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    Matrix k(size, size);
    double mean = 0.0;
    for (int y = -radius; y <= radius; ++y) {
        for (int x = -radius; x <= radius; ++x) {
            // xr runs across the stripes, yr along them.
            const double xr = x * ct + y * st;
            const double yr = -x * st + y * ct;
            const double env = std::exp(-(xr * xr + aspect * aspect * yr * yr) / (2.0 * sigma * sigma));
            const double v = env * std::cos(2.0 * std::numbers::pi * xr / wavelength);
            k.at(x + radius, y + radius) = v;
            mean += v;
        }
    }
    mean /= static_cast<double>(size * size);
    double energy = 0.0;
    for (double& v : k.data()) {
        v -= mean;
        energy += std::abs(v);
    }
    for (double& v : k.data()) v /= energy;
    return k;
}

bool is_flat(const Matrix& m, double eps) {
    return m.empty() || m.max() - m.min() < eps;
}

}  // namespace phasic::saliency
