#pragma once

/**
 * @file io.hpp
 * @brief Text and image formats.
 *
 * Matrix file:   first line `n a b`, then one `i j w` record per finite entry
 *                (1-based indices); omitted pairs are -inf; `#` starts a comment.
 * Vector file:   one value per line (single-column CSV).
 * Images:        PGM P2 (ASCII) or P5 (binary, 1 or 2 bytes per sample);
 *                maxval becomes the lattice top b with a = 0. Pixels are
 *                flattened column-major. Values are rounded to the nearest
 *                integer (ties to even) only when written.
 * Basis CSV:     header row of 1-based eigen-node ids, then one row per vertex.
 * SE file:       `dr dc w` (2-D) or `d w` (1-D) per line.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tropmorph/builders.hpp"
#include "tropmorph/error.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/spectral.hpp"

namespace tropmorph {

struct MatrixFile {
  LatticeConfig config;
  MaxPlusMatrix matrix;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto first = s.find_first_not_of(" \t\r,");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r,");
  return s.substr(first, last - first + 1);
}

inline double parse_real(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line_no) + ": cannot parse number '" + token + "'");
  }
}

inline std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(s);
  while (in >> token) out.push_back(token);
  return out;
}

inline std::size_t parse_index(const std::string& token, std::size_t n, std::size_t line_no) {
  const double v = parse_real(token, line_no);
  if (!is_integral_value(v) || v < 1 || v > static_cast<double>(n)) {
    throw InputError("line " + std::to_string(line_no) + ": index '" + token +
                     "' out of range [1, " + std::to_string(n) + "]");
  }
  return static_cast<std::size_t>(v) - 1;
}

}  // namespace detail

inline MatrixFile read_matrix_file(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<LatticeConfig> cfg;
  std::vector<Triplet> triplets;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto fields = detail::split_fields(body);
    if (fields.size() != 3) {
      throw InputError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    }
    if (!cfg) {
      const double n = detail::parse_real(fields[0], line_no);
      if (!is_integral_value(n) || n < 1) throw InputError("malformed header: n must be a positive integer");
      cfg.emplace(detail::parse_real(fields[1], line_no), detail::parse_real(fields[2], line_no),
                  static_cast<std::size_t>(n));
      continue;
    }
    const std::size_t i = detail::parse_index(fields[0], cfg->n(), line_no);
    const std::size_t j = detail::parse_index(fields[1], cfg->n(), line_no);
    const double w = detail::parse_real(fields[2], line_no);
    if (!std::isfinite(w)) {
      throw InputError("line " + std::to_string(line_no) + ": weights must be finite");
    }
    triplets.push_back({i, j, w});
  }
  if (!cfg) throw InputError("malformed header: empty matrix file");
  return {*cfg, MaxPlusMatrix::from_triplets(cfg->n(), std::move(triplets))};
}

inline void write_matrix_file(std::ostream& out, const MaxPlusMatrix& w, const LatticeConfig& cfg) {
  detail::require_same_size(w.size(), cfg.n(), "write_matrix_file");
  out << cfg.n() << ' ' << format_real(cfg.a()) << ' ' << format_real(cfg.b()) << '\n';
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& e : w.row(i)) {
      out << i + 1 << ' ' << e.col + 1 << ' ' << format_real(e.weight) << '\n';
    }
  }
}

inline std::vector<double> read_vector_csv(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    out.push_back(detail::parse_real(body, line_no));
  }
  return out;
}

inline void write_vector_csv(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << format_real(v) << '\n';
}

struct Image {
  GridShape shape;
  std::size_t maxval = 255;
  /// Column-major samples.
  std::vector<double> pixels;

  LatticeConfig lattice() const { return {0.0, static_cast<double>(maxval), shape.size()}; }
};

namespace detail {

// Next header token of a PNM stream, skipping whitespace and comments.
inline std::string pnm_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      if (!token.empty()) break;
    } else if (std::isspace(ch)) {
      if (!token.empty()) break;
    } else {
      token.push_back(static_cast<char>(ch));
    }
  }
  if (token.empty()) throw InputError("PGM: truncated header");
  return token;
}

inline std::size_t pnm_number(std::istream& in) {
  const std::string t = pnm_token(in);
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(t, &used);
  } catch (const std::exception&) {
    throw InputError("PGM: malformed header value '" + t + "'");
  }
  if (used != t.size()) throw InputError("PGM: malformed header value '" + t + "'");
  return v;
}

}  // namespace detail

inline Image read_pgm(std::istream& in) {
  const std::string magic = detail::pnm_token(in);
  if (magic != "P2" && magic != "P5") throw InputError("PGM: unsupported magic '" + magic + "'");
  Image img;
  const std::size_t width = detail::pnm_number(in);
  const std::size_t height = detail::pnm_number(in);
  img.maxval = detail::pnm_number(in);
  if (width == 0 || height == 0) throw InputError("PGM: empty image");
  if (img.maxval == 0 || img.maxval > 65535) throw InputError("PGM: maxval must be in [1, 65535]");
  img.shape = {height, width};
  img.pixels.assign(width * height, 0.0);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      std::size_t v = 0;
      if (magic == "P2") {
        v = detail::pnm_number(in);
      } else if (img.maxval < 256) {
        const int ch = in.get();
        if (ch == EOF) throw InputError("PGM: truncated pixel data");
        v = static_cast<unsigned char>(ch);
      } else {
        const int hi = in.get();
        const int lo = in.get();
        if (hi == EOF || lo == EOF) throw InputError("PGM: truncated pixel data");
        v = (static_cast<std::size_t>(hi) << 8U) | static_cast<std::size_t>(lo);
      }
      if (v > img.maxval) {
        throw InputError("PGM: pixel value " + std::to_string(v) + " exceeds maxval " +
                         std::to_string(img.maxval));
      }
      img.pixels[img.shape.index(r, c)] = static_cast<double>(v);
    }
  }
  return img;
}

/// Rounds to nearest (ties to even) and clamps into [0, maxval].
inline std::size_t pgm_sample(double v, std::size_t maxval) {
  const double r = std::nearbyint(v);
  return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(maxval)));
}

inline void write_pgm(std::ostream& out, const Image& img, bool binary = true) {
  detail::require_same_size(img.pixels.size(), img.shape.size(), "write_pgm");
  out << (binary ? "P5" : "P2") << '\n'
      << img.shape.cols << ' ' << img.shape.rows << '\n'
      << img.maxval << '\n';
  for (std::size_t r = 0; r < img.shape.rows; ++r) {
    for (std::size_t c = 0; c < img.shape.cols; ++c) {
      const std::size_t v = pgm_sample(img.pixels[img.shape.index(r, c)], img.maxval);
      if (!binary) {
        out << v << (c + 1 == img.shape.cols ? '\n' : ' ');
      } else if (img.maxval < 256) {
        out.put(static_cast<char>(v));
      } else {
        out.put(static_cast<char>(v >> 8U));
        out.put(static_cast<char>(v & 0xFFU));
      }
    }
  }
}

inline StructuringFunction read_structuring_function(std::istream& in) {
  StructuringFunction se;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto f = detail::split_fields(body);
    auto offset = [&](const std::string& s) {
      const double v = detail::parse_real(s, line_no);
      if (!is_integral_value(v)) throw InputError("line " + std::to_string(line_no) + ": offsets must be integers");
      return static_cast<long>(v);
    };
    if (f.size() == 2) {
      se.offsets.push_back({offset(f[0]), 0});
    } else if (f.size() == 3) {
      se.offsets.push_back({offset(f[0]), offset(f[1])});
    } else {
      throw InputError("line " + std::to_string(line_no) + ": expected `d w` or `dr dc w`");
    }
    se.weights.push_back(detail::parse_real(f.back(), line_no));
  }
  return se;
}

/// Basis vectors as columns under a header of 1-based node ids.
inline void write_basis_csv(std::ostream& out, const std::vector<Eigenvector>& basis) {
  for (std::size_t k = 0; k < basis.size(); ++k) out << (k ? "," : "") << basis[k].node + 1;
  out << '\n';
  const std::size_t n = basis.empty() ? 0 : basis.front().values.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      out << (k ? "," : "") << format_real(basis[k].values[i]);
    }
    out << '\n';
  }
}

}  // namespace tropmorph
