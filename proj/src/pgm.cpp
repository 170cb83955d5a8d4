#include <cstdio>
#include <fstream>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/image.hpp"

namespace firecast {

namespace {

constexpr std::size_t kMaxPixels = 64ull * 1024 * 1024;

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("pgm parse error at byte " + std::to_string(pos) + ": " + what);
  }

  bool eof() const { return pos >= bytes.size(); }
  std::uint8_t peek() const { return bytes[pos]; }

  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  }

  // Whitespace and '#' comment lines separate header tokens.
  void skip_separators() {
    while (!eof()) {
      if (is_space(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  long read_int(const char* what) {
    skip_separators();
    if (eof()) fail(std::string("unexpected end of file, expected ") + what);
    if (peek() < '0' || peek() > '9') {
      fail(std::string("expected ") + what + ", found byte 0x" + [this] {
        char buf[3];
        std::snprintf(buf, sizeof buf, "%02x", peek());
        return std::string(buf);
      }());
    }
    long value = 0;
    while (!eof() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000'000L) fail(std::string(what) + " is out of range");
      ++pos;
    }
    return value;
  }
};

}  // namespace

GrayImage pgm_parse(std::span<const std::uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    cur.fail("bad magic, expected \"P2\" or \"P5\"");
  }
  const bool binary = bytes[1] == '5';
  cur.pos = 2;

  const long width = cur.read_int("width");
  const long height = cur.read_int("height");
  if (width <= 0 || height <= 0) cur.fail("image dimensions must be positive");
  if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) > kMaxPixels) {
    cur.fail("image is implausibly large");
  }
  const long maxval = cur.read_int("maxval");
  if (maxval <= 0 || maxval > 255) {
    cur.fail("maxval " + std::to_string(maxval) + " unsupported, need 1..255");
  }

  GrayImage image;
  image.width = static_cast<std::size_t>(width);
  image.height = static_cast<std::size_t>(height);
  const std::size_t count = image.width * image.height;
  image.pixels.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the payload.
    if (cur.eof() || !Cursor::is_space(cur.peek())) {
      cur.fail("expected single whitespace before binary payload");
    }
    ++cur.pos;
    if (bytes.size() - cur.pos < count) {
      const std::size_t found = bytes.size() - cur.pos;
      cur.pos = bytes.size();
      cur.fail("truncated P5 payload: expected " + std::to_string(count) +
               " bytes, found " + std::to_string(found));
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t v = bytes[cur.pos];
      if (v > maxval) cur.fail("pixel value " + std::to_string(v) + " exceeds maxval");
      image.pixels.push_back(v);
      ++cur.pos;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = cur.read_int("pixel value");
      if (v > maxval) cur.fail("pixel value " + std::to_string(v) + " exceeds maxval");
      image.pixels.push_back(static_cast<std::uint8_t>(v));
    }
  }

  cur.skip_separators();
  if (!cur.eof()) cur.fail("trailing data after pixel payload");
  return image;
}

GrayImage pgm_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return pgm_parse(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> pgm_bytes(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
  return bytes;
}

void pgm_save(const GrayImage& image, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = pgm_bytes(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

Tensor image_to_tensor(const GrayImage& image) {
  Tensor t({1, image.height, image.width});
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    t[i] = static_cast<double>(image.pixels[i]) / 255.0;
  }
  return t;
}

}  // namespace firecast
