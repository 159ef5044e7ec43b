#pragma once

// Single-file gzip-compressed NIfTI-1 volumes (.nii.gz) for label masks and
// synthetic images. Voxels are stored x-fastest, as on disk.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vids/core.hpp"

namespace vids {

using Dims = std::array<int, 3>;
using Spacing = std::array<double, 3>;

struct LabelVolume {
    Dims dims{0, 0, 0};
    Spacing spacing{1.0, 1.0, 1.0};
    std::vector<std::uint8_t> voxels;

    LabelVolume() = default;
    /// Zero-filled volume; dims must be positive.
    explicit LabelVolume(Dims d, Spacing s = {1.0, 1.0, 1.0});

    std::size_t size() const { return voxels.size(); }
    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) * (static_cast<std::size_t>(y) +
                                                    static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(z));
    }
    std::uint8_t& operator()(int x, int y, int z) { return voxels[index(x, y, z)]; }
    std::uint8_t operator()(int x, int y, int z) const { return voxels[index(x, y, z)]; }

    /// Throws VolumeError(InvalidVolume) if dims/spacing/payload disagree.
    void check() const;
    bool is_binary() const;
    std::size_t count_nonzero() const;

    friend bool operator==(const LabelVolume&, const LabelVolume&) = default;
};

enum class VolumeErrorKind { NotGzip, BadHeader, BadMagic, UnsupportedDatatype, TruncatedData, IoFailure, InvalidVolume };

class VolumeError : public Error {
public:
    VolumeError(VolumeErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
    VolumeErrorKind kind() const { return kind_; }

private:
    VolumeErrorKind kind_;
};

struct VolumeHeader {
    Dims dims{};
    int datatype = 0;
    int bitpix = 0;
    Spacing spacing{};
    std::size_t data_offset = 0;
    bool big_endian = false;
};

inline constexpr int kNiftiHeaderSize = 348;
inline constexpr std::size_t kNiftiDataOffset = 352;
inline constexpr int kDatatypeUint8 = 2;
inline constexpr int kDatatypeInt16 = 4;

struct DecodedVolume {
    VolumeHeader header;
    LabelVolume volume;
    /// int16 input had values outside [0, 255] that were clamped.
    bool saturated = false;
};

/// Uncompressed NIfTI-1 bytes: 348-byte header, 4 zero extension bytes, uint8 payload.
std::vector<std::uint8_t> encode_nifti(const LabelVolume& v);
DecodedVolume decode_nifti(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> raw);
/// Throws NotGzip for a missing gzip magic or corrupt stream, TruncatedData for a cut-off one.
std::vector<std::uint8_t> gzip_decompress(std::span<const std::uint8_t> compressed);

DecodedVolume read_volume_file(const std::filesystem::path& path);
LabelVolume read_volume(const std::filesystem::path& path);
void write_volume(const LabelVolume& v, const std::filesystem::path& path);

}  // namespace vids
