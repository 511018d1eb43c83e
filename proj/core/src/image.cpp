#include "imgq/image.hpp"

#include "imgq/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace imgq {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::UnsupportedConversion: return "UnsupportedConversion";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::DegenerateImage: return "DegenerateImage";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InsufficientClassMembers: return "InsufficientClassMembers";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

const char* to_string(ColorSpace cs) noexcept {
    switch (cs) {
    case ColorSpace::RGB: return "RGB";
    case ColorSpace::Gray: return "Gray";
    case ColorSpace::HSV: return "HSV";
    case ColorSpace::Lab: return "Lab";
    }
    return "Unknown";
}

int channel_count(ColorSpace cs) noexcept { return cs == ColorSpace::Gray ? 1 : 3; }

Plane::Plane(int w, int h, double fill) : width(w), height(h) {
    if (w < 1 || h < 1)
        throw Error(ErrorCode::InvalidArgument, "plane extent must be positive");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

Plane::Plane(int w, int h, std::vector<double> values) : width(w), height(h), data(std::move(values)) {
    if (w < 1 || h < 1 || data.size() != static_cast<std::size_t>(w) * h)
        throw Error(ErrorCode::InvalidArgument, "plane data does not match extent");
}

double Plane::clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return (*this)(x, y);
}

double Plane::sum() const {
    double s = 0.0;
    for (double v : data)
        s += v;
    return s;
}

double Plane::max() const {
    return data.empty() ? 0.0 : *std::max_element(data.begin(), data.end());
}

RasterImage::RasterImage(int width, int height, ColorSpace cs)
    : RasterImage(width, height, cs,
                  std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) *
                                      std::max(height, 0) * channel_count(cs))) {}

RasterImage::RasterImage(int width, int height, ColorSpace cs, std::vector<double> data)
    : width_(width), height_(height), channels_(channel_count(cs)), cs_(cs), data_(std::move(data)) {
    if (width < 1 || height < 1)
        throw Error(ErrorCode::InvalidArgument, "image extent must be positive");
    if (data_.size() != static_cast<std::size_t>(width) * height * channels_)
        throw Error(ErrorCode::InvalidArgument, "image data length does not match extent");
}

RasterImage RasterImage::from_plane(const Plane& p, ColorSpace cs) {
    if (channel_count(cs) != 1)
        throw Error(ErrorCode::InvalidArgument, "single plane needs a one-channel colorspace");
    return RasterImage(p.width, p.height, cs, p.data);
}

RasterImage RasterImage::from_planes(std::span<const Plane> planes, ColorSpace cs) {
    const int n = channel_count(cs);
    if (static_cast<int>(planes.size()) != n)
        throw Error(ErrorCode::InvalidArgument, "plane count does not match colorspace");
    const int w = planes[0].width;
    const int h = planes[0].height;
    RasterImage img(w, h, cs);
    for (int c = 0; c < n; ++c) {
        if (planes[c].width != w || planes[c].height != h)
            throw Error(ErrorCode::InvalidArgument, "planes differ in extent");
        for (std::size_t i = 0; i < planes[c].size(); ++i)
            img.data_[i * n + c] = planes[c].data[i];
    }
    return img;
}

Plane RasterImage::channel(int c) const {
    if (c < 0 || c >= channels_)
        throw Error(ErrorCode::InvalidArgument, "channel index out of range");
    Plane p(width_, height_);
    for (std::size_t i = 0; i < p.size(); ++i)
        p.data[i] = data_[i * channels_ + c];
    return p;
}

void RasterImage::validate() const {
    auto fail = [&](double v) {
        throw Error(ErrorCode::InvalidArgument, std::string("sample ") + std::to_string(v) +
                                                    " outside " + to_string(cs_) + " range");
    };
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const double v = data_[i];
        if (!std::isfinite(v))
            fail(v);
        const int c = static_cast<int>(i % channels_);
        switch (cs_) {
        case ColorSpace::RGB:
        case ColorSpace::Gray:
            if (v < 0.0 || v > 1.0) fail(v);
            break;
        case ColorSpace::HSV:
            if (c == 0 ? (v < 0.0 || v >= 360.0) : (v < 0.0 || v > 1.0)) fail(v);
            break;
        case ColorSpace::Lab:
            if (c == 0 && (v < 0.0 || v > 100.0)) fail(v);
            break;
        }
    }
}

} // namespace imgq
