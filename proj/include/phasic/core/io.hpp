#pragma once

#include "phasic/core/image.hpp"

#include <filesystem>

namespace phasic {

/// Reads an 8- or 16-bit PNG as a normalized 1- or 3-channel image (alpha dropped).
ImageMatrix read_png(const std::filesystem::path& path);

/// Writes 8-bit PNG; values are rounded from [0,1] to [0,255].
void write_png(const std::filesystem::path& path, const ImageMatrix& img);
void write_png(const std::filesystem::path& path, const SaliencyMap& map);

/// Masks serialize as 0/255 grayscale.
void write_png(const std::filesystem::path& path, const BinaryMask& mask);
BinaryMask read_mask_png(const std::filesystem::path& path);

}  // namespace phasic
