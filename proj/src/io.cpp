// Copyright 2026 The sparsemp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparsemp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace smp::io {

namespace {

[[noreturn]] void parse_fail(const std::string& path, long line,
                             const std::string& what) {
  throw_error(ErrorCode::kParse,
              path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::in | std::ios::binary : std::ios::in);
  if (!in) throw_error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

double parse_double(const std::string& token, const std::string& path, long line) {
  try {
    size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size()) parse_fail(path, line, "trailing junk in '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(path, line, "not a number: '" + token + "'");
  }
}

}  // namespace

Eigen::MatrixXd load_csv_matrix(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      // Trim surrounding whitespace.
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) parse_fail(path, lineno, "empty cell");
      row.push_back(parse_double(cell.substr(b, e - b + 1), path, lineno));
    }
    if (row.empty()) parse_fail(path, lineno, "empty row");
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(path, lineno, "ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_error(ErrorCode::kParse, path + ": empty matrix");
  Eigen::MatrixXd out(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) {
      out(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    }
  }
  return out;
}

LibsvmData load_libsvm(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<double> labels;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows;
  Eigen::Index max_index = 0;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string token;
    if (!(ss >> token)) continue;
    labels.push_back(parse_double(token, path, lineno));
    std::vector<std::pair<Eigen::Index, double>> row;
    while (ss >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        parse_fail(path, lineno, "expected index:value, got '" + token + "'");
      }
      long idx = 0;
      try {
        idx = std::stol(token.substr(0, colon));
      } catch (const std::logic_error&) {
        parse_fail(path, lineno, "bad feature index in '" + token + "'");
      }
      if (idx < 1) parse_fail(path, lineno, "feature indices are 1-based");
      const double val = parse_double(token.substr(colon + 1), path, lineno);
      row.emplace_back(Eigen::Index(idx - 1), val);
      max_index = std::max(max_index, Eigen::Index(idx));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_error(ErrorCode::kParse, path + ": no samples");

  LibsvmData data;
  data.features = Eigen::MatrixXd::Zero(Eigen::Index(rows.size()), max_index);
  data.labels.resize(Eigen::Index(labels.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    data.labels[Eigen::Index(i)] = labels[i] > 0.0 ? 1.0 : -1.0;
    for (const auto& [j, v] : rows[i]) data.features(Eigen::Index(i), j) = v;
  }
  return data;
}

Eigen::VectorXd load_series(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<double> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::string token = line.substr(b, e - b + 1);
    if (token[0] == '#') continue;
    values.push_back(parse_double(token, path, lineno));
  }
  if (values.empty()) throw_error(ErrorCode::kParse, path + ": empty series");
  return Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size()));
}

PgmImage load_pgm(const std::string& path) {
  std::ifstream in = open_or_throw(path, /*binary=*/true);
  std::string magic;
  in >> magic;
  if (magic != "P2" && magic != "P5") {
    throw_error(ErrorCode::kParse, path + ": not a P2/P5 PGM file");
  }
  auto next_token = [&in, &path]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw_error(ErrorCode::kParse, path + ": truncated PGM header");
  };
  const long width = std::stol(next_token());
  const long height = std::stol(next_token());
  const long maxval = std::stol(next_token());
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw_error(ErrorCode::kParse, path + ": unsupported PGM geometry");
  }
  PgmImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(width * height);
  if (magic == "P2") {
    for (Eigen::Index i = 0; i < img.pixels.size(); ++i) {
      long v = 0;
      if (!(in >> v)) throw_error(ErrorCode::kParse, path + ": truncated P2 data");
      img.pixels[i] = double(v) / double(maxval);
    }
  } else {
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> buf(size_t(width) * size_t(height));
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (in.gcount() != std::streamsize(buf.size())) {
      throw_error(ErrorCode::kParse, path + ": truncated P5 data");
    }
    for (size_t i = 0; i < buf.size(); ++i) {
      img.pixels[Eigen::Index(i)] = double(buf[i]) / double(maxval);
    }
  }
  return img;
}

void save_pgm(const std::string& path, const PgmImage& image) {
  if (image.pixels.size() != image.height * image.width) {
    throw_error(ErrorCode::kInvalidArgument, "save_pgm: inconsistent size");
  }
  std::ofstream out(path, std::ios::out | std::ios::binary);
  if (!out) throw_error(ErrorCode::kIo, "cannot write " + path);
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  std::vector<unsigned char> buf(size_t(image.pixels.size()));
  for (Eigen::Index i = 0; i < image.pixels.size(); ++i) {
    const double clipped = std::min(1.0, std::max(0.0, image.pixels[i]));
    buf[size_t(i)] = static_cast<unsigned char>(std::lround(clipped * 255.0));
  }
  out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
  if (!out) throw_error(ErrorCode::kIo, "short write to " + path);
}

}  // namespace smp::io
