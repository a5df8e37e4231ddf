#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <zlib.h>

#include "gridlock/errors.hpp"
#include "gridlock/pdf_frontend.hpp"

namespace gridlock {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RasterPage decode_pgm(const std::string& bytes, double dpi) {
  std::istringstream in(bytes);
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") throw ParseError("pgm: bad magic");
  auto next_int = [&]() {
    for (;;) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        continue;
      }
      int v;
      if (!(in >> v)) throw ParseError("pgm: truncated header");
      return v;
    }
  };
  int w = next_int(), h = next_int(), maxv = next_int();
  if (w <= 0 || h <= 0 || maxv <= 0 || maxv > 65535)
    throw ParseError("pgm: bad dimensions");
  RasterPage img;
  img.width_px = w;
  img.height_px = h;
  img.dpi = dpi;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  if (magic == "P2") {
    for (auto& px : img.pixels) {
      int v;
      if (!(in >> v)) throw ParseError("pgm: truncated data");
      px = static_cast<std::uint8_t>(v * 255 / maxv);
    }
  } else {
    in.get();  // single whitespace after maxval
    std::size_t bpp = maxv > 255 ? 2 : 1;
    std::size_t need = img.pixels.size() * bpp;
    std::string data(need, '\0');
    in.read(data.data(), static_cast<std::streamsize>(need));
    if (static_cast<std::size_t>(in.gcount()) != need)
      throw ParseError("pgm: truncated data");
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      int v = bpp == 1 ? static_cast<unsigned char>(data[i])
                       : (static_cast<unsigned char>(data[2 * i]) << 8) |
                             static_cast<unsigned char>(data[2 * i + 1]);
      img.pixels[i] = static_cast<std::uint8_t>(v * 255 / maxv);
    }
  }
  return img;
}

std::uint32_t be32(const unsigned char* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (p[1] << 16) | (p[2] << 8) | p[3];
}

std::string zlib_inflate_all(const std::string& in) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw ParseError("png: inflateInit failed");
  std::string out;
  out.resize(std::max<std::size_t>(in.size() * 4, 1 << 16));
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  std::size_t written = 0;
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    if (written == out.size()) out.resize(out.size() * 2);
    zs.next_out = reinterpret_cast<Bytef*>(out.data() + written);
    zs.avail_out = static_cast<uInt>(out.size() - written);
    rc = inflate(&zs, Z_NO_FLUSH);
    written = out.size() - zs.avail_out;
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw ParseError("png: zlib inflate error");
    }
  }
  inflateEnd(&zs);
  out.resize(written);
  return out;
}

RasterPage decode_png(const std::string& bytes, double dpi) {
  static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (bytes.size() < 8 || std::memcmp(bytes.data(), sig, 8) != 0)
    throw ParseError("png: bad signature");
  std::size_t pos = 8;
  int width = 0, height = 0, bit_depth = 0, color_type = 0, interlace = 0;
  std::string idat;
  std::vector<std::array<std::uint8_t, 3>> palette;
  while (pos + 8 <= bytes.size()) {
    std::uint32_t len = be32(reinterpret_cast<const unsigned char*>(bytes.data() + pos));
    std::string type = bytes.substr(pos + 4, 4);
    if (pos + 12 + len > bytes.size()) throw ParseError("png: truncated chunk");
    const char* data = bytes.data() + pos + 8;
    if (type == "IHDR") {
      const unsigned char* d = reinterpret_cast<const unsigned char*>(data);
      width = static_cast<int>(be32(d));
      height = static_cast<int>(be32(d + 4));
      bit_depth = d[8];
      color_type = d[9];
      interlace = d[12];
    } else if (type == "PLTE") {
      for (std::uint32_t i = 0; i + 2 < len; i += 3)
        palette.push_back({static_cast<std::uint8_t>(data[i]),
                           static_cast<std::uint8_t>(data[i + 1]),
                           static_cast<std::uint8_t>(data[i + 2])});
    } else if (type == "IDAT") {
      idat.append(data, len);
    } else if (type == "IEND") {
      break;
    }
    pos += 12 + len;
  }
  if (width <= 0 || height <= 0) throw ParseError("png: missing IHDR");
  if (interlace != 0) throw ParseError("png: interlaced images unsupported");
  if (bit_depth != 8) throw ParseError("png: only 8-bit depth supported");
  int channels;
  switch (color_type) {
    case 0: channels = 1; break;  // gray
    case 2: channels = 3; break;  // rgb
    case 3: channels = 1; break;  // palette
    case 4: channels = 2; break;  // gray+alpha
    case 6: channels = 4; break;  // rgba
    default: throw ParseError("png: unsupported color type");
  }

  std::string raw = zlib_inflate_all(idat);
  std::size_t stride = static_cast<std::size_t>(width) * channels;
  if (raw.size() < (stride + 1) * static_cast<std::size_t>(height))
    throw ParseError("png: truncated pixel data");

  RasterPage img;
  img.width_px = width;
  img.height_px = height;
  img.dpi = dpi;
  img.pixels.resize(static_cast<std::size_t>(width) * height);

  std::vector<unsigned char> prev(stride, 0), row(stride, 0);
  std::size_t rp = 0;
  int bpp = channels;
  for (int y = 0; y < height; ++y) {
    int ft = static_cast<unsigned char>(raw[rp++]);
    std::memcpy(row.data(), raw.data() + rp, stride);
    rp += stride;
    for (std::size_t i = 0; i < stride; ++i) {
      unsigned char left = i >= static_cast<std::size_t>(bpp) ? row[i - bpp] : 0;
      unsigned char up = prev[i];
      unsigned char ul = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
      switch (ft) {
        case 0: break;
        case 1: row[i] = static_cast<unsigned char>(row[i] + left); break;
        case 2: row[i] = static_cast<unsigned char>(row[i] + up); break;
        case 3: row[i] = static_cast<unsigned char>(row[i] + (left + up) / 2); break;
        case 4: {
          int p = left + up - ul;
          int pa = std::abs(p - left), pb = std::abs(p - up), pc = std::abs(p - ul);
          unsigned char pred = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : ul);
          row[i] = static_cast<unsigned char>(row[i] + pred);
          break;
        }
        default: throw ParseError("png: bad filter type");
      }
    }
    for (int x = 0; x < width; ++x) {
      int v;
      const unsigned char* px = row.data() + static_cast<std::size_t>(x) * channels;
      switch (color_type) {
        case 0: v = px[0]; break;
        case 2: v = (299 * px[0] + 587 * px[1] + 114 * px[2]) / 1000; break;
        case 3: {
          if (px[0] >= palette.size()) throw ParseError("png: palette index out of range");
          const auto& c = palette[px[0]];
          v = (299 * c[0] + 587 * c[1] + 114 * c[2]) / 1000;
          break;
        }
        case 4: v = px[0]; break;
        default: v = (299 * px[0] + 587 * px[1] + 114 * px[2]) / 1000; break;
      }
      img.pixels[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(v);
    }
    std::swap(prev, row);
  }
  return img;
}

}  // namespace

RasterPage decode_image(const std::string& bytes, double dpi) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2'))
    return decode_pgm(bytes, dpi);
  if (bytes.size() >= 8 && static_cast<unsigned char>(bytes[0]) == 0x89 &&
      bytes[1] == 'P')
    return decode_png(bytes, dpi);
  throw ParseError("image: unrecognized format (expected PNG or PGM)");
}

RasterPage load_image(const std::string& path, double dpi) {
  return decode_image(read_file(path), dpi);
}

void save_pgm(const RasterPage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << "P5\n" << img.width_px << " " << img.height_px << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

}  // namespace gridlock
