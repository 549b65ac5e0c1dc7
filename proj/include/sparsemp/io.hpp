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

#ifndef SPARSEMP_IO_HPP_
#define SPARSEMP_IO_HPP_

#include <string>

#include <Eigen/Core>

#include "sparsemp/errors.hpp"

namespace smp::io {

// Row-major comma-separated values, no header. Parse failures carry the line
// number.
Eigen::MatrixXd load_csv_matrix(const std::string& path);

struct LibsvmData {
  Eigen::MatrixXd features;  // densified, columns = max feature index
  Eigen::VectorXd labels;    // mapped to {-1, +1} (label > 0 -> +1)
};

// LIBSVM sparse format: "<label> <index>:<value> ...", 1-based indices.
LibsvmData load_libsvm(const std::string& path);

// One value per line; blank lines and lines starting with '#' are skipped.
Eigen::VectorXd load_series(const std::string& path);

struct PgmImage {
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  Eigen::VectorXd pixels;  // row-major, scaled to [0,1]
};

// P2 (ASCII) and P5 (binary) portable graymaps, maxval <= 255.
PgmImage load_pgm(const std::string& path);
void save_pgm(const std::string& path, const PgmImage& image);

}  // namespace smp::io

#endif  // SPARSEMP_IO_HPP_
