#include "vids/volume.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <zlib.h>

namespace vids {

namespace {

// NIfTI-1 header byte offsets.
constexpr std::size_t kOffDim = 40;
constexpr std::size_t kOffDatatype = 70;
constexpr std::size_t kOffBitpix = 72;
constexpr std::size_t kOffPixdim = 76;
constexpr std::size_t kOffVoxOffset = 108;
constexpr std::size_t kOffSclSlope = 112;
constexpr std::size_t kOffXyztUnits = 123;
constexpr std::size_t kOffQformCode = 252;
constexpr std::size_t kOffSformCode = 254;
constexpr std::size_t kOffSrowX = 280;
constexpr std::size_t kOffMagic = 344;

template <typename T>
T load(std::span<const std::uint8_t> buf, std::size_t off, bool swap) {
    std::array<std::uint8_t, sizeof(T)> raw;
    std::memcpy(raw.data(), buf.data() + off, sizeof(T));
    if (swap) std::reverse(raw.begin(), raw.end());
    return std::bit_cast<T>(raw);
}

template <typename T>
void store(std::vector<std::uint8_t>& buf, std::size_t off, T value) {
    static_assert(std::endian::native == std::endian::little, "writer assumes a little-endian host");
    std::memcpy(buf.data() + off, &value, sizeof(T));
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw VolumeError(VolumeErrorKind::IoFailure, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

LabelVolume::LabelVolume(Dims d, Spacing s) : dims(d), spacing(s) {
    for (int n : d)
        if (n <= 0) throw VolumeError(VolumeErrorKind::InvalidVolume, "volume dims must be positive");
    voxels.assign(static_cast<std::size_t>(d[0]) * d[1] * d[2], 0);
}

void LabelVolume::check() const {
    for (int n : dims)
        if (n <= 0) throw VolumeError(VolumeErrorKind::InvalidVolume, "volume dims must be positive");
    for (double s : spacing)
        if (!(s > 0.0) || !std::isfinite(s))
            throw VolumeError(VolumeErrorKind::InvalidVolume, "voxel spacing must be positive");
    if (voxels.size() != static_cast<std::size_t>(dims[0]) * dims[1] * dims[2])
        throw VolumeError(VolumeErrorKind::InvalidVolume, "voxel count does not match dims");
}

bool LabelVolume::is_binary() const {
    return std::all_of(voxels.begin(), voxels.end(), [](std::uint8_t v) { return v <= 1; });
}

std::size_t LabelVolume::count_nonzero() const {
    return static_cast<std::size_t>(std::count_if(voxels.begin(), voxels.end(), [](std::uint8_t v) { return v != 0; }));
}

// ---------------------------------------------------------------------------

std::vector<std::uint8_t> encode_nifti(const LabelVolume& v) {
    v.check();
    std::vector<std::uint8_t> buf(kNiftiDataOffset + v.size(), 0);
    store<std::int32_t>(buf, 0, kNiftiHeaderSize);
    buf[38] = 'r';  // regular
    const std::int16_t dim[8] = {3, static_cast<std::int16_t>(v.dims[0]), static_cast<std::int16_t>(v.dims[1]),
                                 static_cast<std::int16_t>(v.dims[2]), 1, 1, 1, 1};
    for (int i = 0; i < 8; ++i) store<std::int16_t>(buf, kOffDim + 2 * i, dim[i]);
    store<std::int16_t>(buf, kOffDatatype, kDatatypeUint8);
    store<std::int16_t>(buf, kOffBitpix, 8);
    const float pixdim[8] = {1.0f, static_cast<float>(v.spacing[0]), static_cast<float>(v.spacing[1]),
                             static_cast<float>(v.spacing[2]), 0.0f, 0.0f, 0.0f, 0.0f};
    for (int i = 0; i < 8; ++i) store<float>(buf, kOffPixdim + 4 * i, pixdim[i]);
    store<float>(buf, kOffVoxOffset, static_cast<float>(kNiftiDataOffset));
    store<float>(buf, kOffSclSlope, 1.0f);
    buf[kOffXyztUnits] = 2;  // millimetres
    // Orientation: identity scaled by spacing, in both qform and sform.
    store<std::int16_t>(buf, kOffQformCode, 1);
    store<std::int16_t>(buf, kOffSformCode, 1);
    for (int row = 0; row < 3; ++row)
        store<float>(buf, kOffSrowX + 16 * row + 4 * row, static_cast<float>(v.spacing[row]));
    std::memcpy(buf.data() + kOffMagic, "n+1\0", 4);
    std::copy(v.voxels.begin(), v.voxels.end(), buf.begin() + kNiftiDataOffset);
    return buf;
}

DecodedVolume decode_nifti(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < static_cast<std::size_t>(kNiftiHeaderSize))
        throw VolumeError(VolumeErrorKind::TruncatedData, "file shorter than a NIfTI-1 header");

    DecodedVolume out;
    auto& h = out.header;
    const auto size_le = load<std::int32_t>(bytes, 0, false);
    if (size_le == kNiftiHeaderSize) {
        h.big_endian = std::endian::native == std::endian::big;
    } else if (load<std::int32_t>(bytes, 0, true) == kNiftiHeaderSize) {
        h.big_endian = std::endian::native == std::endian::little;
    } else {
        throw VolumeError(VolumeErrorKind::BadHeader, "header size field is not 348");
    }
    const bool swap = size_le != kNiftiHeaderSize;

    if (std::memcmp(bytes.data() + kOffMagic, "n+1\0", 4) != 0)
        throw VolumeError(VolumeErrorKind::BadMagic, "magic is not \"n+1\" (single-file NIfTI-1)");

    const auto ndim = load<std::int16_t>(bytes, kOffDim, swap);
    if (ndim < 1 || ndim > 7) throw VolumeError(VolumeErrorKind::BadHeader, "dim[0] out of range");
    for (int i = 0; i < 3; ++i) {
        h.dims[i] = i < ndim ? load<std::int16_t>(bytes, kOffDim + 2 * (i + 1), swap) : 1;
        if (h.dims[i] <= 0) throw VolumeError(VolumeErrorKind::BadHeader, "non-positive dimension");
    }
    for (int i = 4; i <= ndim; ++i)
        if (load<std::int16_t>(bytes, kOffDim + 2 * i, swap) > 1)
            throw VolumeError(VolumeErrorKind::BadHeader, "only 3-D volumes are supported");

    h.datatype = load<std::int16_t>(bytes, kOffDatatype, swap);
    h.bitpix = load<std::int16_t>(bytes, kOffBitpix, swap);
    if (h.datatype != kDatatypeUint8 && h.datatype != kDatatypeInt16)
        throw VolumeError(VolumeErrorKind::UnsupportedDatatype,
                          "unsupported datatype code " + std::to_string(h.datatype));
    const int bytes_per_voxel = h.datatype == kDatatypeUint8 ? 1 : 2;
    if (h.bitpix != 8 * bytes_per_voxel)
        throw VolumeError(VolumeErrorKind::BadHeader, "bitpix does not match datatype");

    for (int i = 0; i < 3; ++i) {
        const double s = std::fabs(load<float>(bytes, kOffPixdim + 4 * (i + 1), swap));
        h.spacing[i] = s > 0.0 && std::isfinite(s) ? s : 1.0;
    }
    const float vox_offset = load<float>(bytes, kOffVoxOffset, swap);
    if (!(vox_offset >= static_cast<float>(kNiftiDataOffset)))
        throw VolumeError(VolumeErrorKind::BadHeader, "vox_offset below 352");
    h.data_offset = static_cast<std::size_t>(vox_offset);

    out.volume = LabelVolume(h.dims, h.spacing);
    const std::size_t n = out.volume.size();
    if (bytes.size() < h.data_offset + n * bytes_per_voxel)
        throw VolumeError(VolumeErrorKind::TruncatedData,
                          "voxel payload holds fewer bytes than dims require");

    if (h.datatype == kDatatypeUint8) {
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset), n, out.volume.voxels.begin());
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = load<std::int16_t>(bytes, h.data_offset + 2 * i, swap);
            const auto clamped = std::clamp<int>(v, 0, 255);
            out.saturated = out.saturated || clamped != v;
            out.volume.voxels[i] = static_cast<std::uint8_t>(clamped);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> raw) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw VolumeError(VolumeErrorKind::IoFailure, "deflateInit2 failed");
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(raw.size())) + 32);
    zs.next_in = const_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw VolumeError(VolumeErrorKind::IoFailure, "deflate did not finish");
    out.resize(produced);
    return out;
}

std::vector<std::uint8_t> gzip_decompress(std::span<const std::uint8_t> compressed) {
    if (compressed.size() < 2 || compressed[0] != 0x1f || compressed[1] != 0x8b)
        throw VolumeError(VolumeErrorKind::NotGzip, "missing gzip magic bytes");

    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw VolumeError(VolumeErrorKind::IoFailure, "inflateInit2 failed");
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());

    std::vector<std::uint8_t> out;
    std::array<std::uint8_t, 1 << 16> chunk;
    for (;;) {
        zs.next_out = chunk.data();
        zs.avail_out = static_cast<uInt>(chunk.size());
        const int rc = inflate(&zs, Z_NO_FLUSH);
        out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - zs.avail_out));
        if (rc == Z_STREAM_END) {
            // Concatenated gzip members are legal; continue into the next one.
            if (zs.avail_in >= 2 && zs.next_in[0] == 0x1f && zs.next_in[1] == 0x8b) {
                inflateReset(&zs);
                continue;
            }
            break;
        }
        if (rc == Z_OK) continue;
        inflateEnd(&zs);
        if (rc == Z_BUF_ERROR) throw VolumeError(VolumeErrorKind::TruncatedData, "gzip stream is truncated");
        throw VolumeError(VolumeErrorKind::NotGzip, "corrupt gzip stream");
    }
    inflateEnd(&zs);
    return out;
}

DecodedVolume read_volume_file(const std::filesystem::path& path) {
    const auto raw = slurp(path);
    return decode_nifti(gzip_decompress(raw));
}

LabelVolume read_volume(const std::filesystem::path& path) { return read_volume_file(path).volume; }

void write_volume(const LabelVolume& v, const std::filesystem::path& path) {
    const auto compressed = gzip_compress(encode_nifti(v));
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw VolumeError(VolumeErrorKind::IoFailure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(compressed.data()), static_cast<std::streamsize>(compressed.size()));
    if (!out) throw VolumeError(VolumeErrorKind::IoFailure, "short write to " + path.string());
}

}  // namespace vids
