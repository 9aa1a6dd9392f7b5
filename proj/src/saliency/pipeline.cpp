#include "phasic/saliency/pipeline.hpp"

#include "phasic/core/error.hpp"
#include "phasic/saliency/cosaliency.hpp"
#include "phasic/saliency/extraction.hpp"
#include "phasic/saliency/gbvs.hpp"
#include "phasic/saliency/simpsal.hpp"
#include "phasic/saliency/spectral_residual.hpp"
#include "phasic/saliency/wavelet_saliency.hpp"

#include <string>

namespace phasic::saliency {

std::string_view method_id(Method m) {
    switch (m) {
        case Method::SimpSal: return "simpsal";
        case Method::Gbvs: return "gbvs";
        case Method::CoSaliency: return "cos";
        case Method::SpectralResidual: return "spe";
        case Method::Wavelet: return "wavelet";
    }
    throw InvalidArgument("method_id: unknown method");
}

Method parse_method(std::string_view id) {
    for (Method m : kAllMethods) {
        if (method_id(m) == id) return m;
    }
    throw InvalidArgument("unknown saliency method '" + std::string(id) + "'");
}

SaliencyMap compute_saliency(Method method, const ImageMatrix& img, const SaliencyParams& params) {
    switch (method) {
        case Method::SimpSal: return simpsal(img, params.simpsal);
        case Method::Gbvs: return gbvs(img, params.gbvs);
        case Method::CoSaliency: {
            const ImageMatrix rgb =
                img.channels() == 3 ? img : ImageMatrix::from_planes({img.plane(0), img.plane(0), img.plane(0)});
            const ImageMatrix group[1] = {rgb};
            return cosaliency(group, params.cosaliency).maps.front();
        }
        case Method::SpectralResidual: return spectral_residual(img, params.spectral);
        case Method::Wavelet: return wavelet_saliency(img, params.wavelet);
    }
    throw InvalidArgument("compute_saliency: unknown method");
}

SaliencyTriplet triplet_from_map(const ImageMatrix& o, const SaliencyMap& map, double threshold,
                                 double line_fraction, std::string_view sample_id) {
    BinaryMask mask = threshold_mask(map, threshold);
    ImageMatrix fg = foreground(o, mask);
    const RoiThreshold th = RoiThreshold::line_fraction(line_fraction, o.width(), o.height());
    ImageMatrix cropped = fg_roi(o, mask, th, sample_id);
    ImageMatrix masked_crop = fg_roi(fg, mask, th, sample_id);
    return {map, std::move(mask), std::move(fg), std::move(cropped), std::move(masked_crop), false};
}

SaliencyTriplet saliency_triplet(const ImageMatrix& o, Method method, const SaliencyParams& params,
                                 std::string_view sample_id) {
    return triplet_from_map(o, compute_saliency(method, o, params), params.threshold_for(method),
                            params.roi_line_fraction, sample_id);
}

SaliencyTriplet saliency_triplet_or_substitute(const ImageMatrix& o, Method method, const SaliencyParams& params,
                                               std::string_view sample_id) {
    SaliencyMap map = compute_saliency(method, o, params);
    const double t = params.threshold_for(method);
    try {
        return triplet_from_map(o, map, t, params.roi_line_fraction, sample_id);
    } catch (const EmptyRoiError&) {
        BinaryMask mask = threshold_mask(map, t);
        ImageMatrix fg = foreground(o, mask);
        return {std::move(map), std::move(mask), fg, fg, fg, true};
    }
}

}  // namespace phasic::saliency
