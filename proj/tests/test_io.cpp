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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace smp {
namespace {

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("sparsemp_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

TEST(IoCsv, LoadsRowMajorMatrix) {
  TempDir tmp;
  write_file(tmp.path("m.csv"), "1, 2,3\n4,5, 6\n");
  Eigen::MatrixXd m = io::load_csv_matrix(tmp.path("m.csv"));
  ASSERT_EQ(m.rows(), 2);
  ASSERT_EQ(m.cols(), 3);
  EXPECT_DOUBLE_EQ(m(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(m(1, 2), 6.0);
}

TEST(IoCsv, ReportsLineNumbers) {
  TempDir tmp;
  write_file(tmp.path("bad.csv"), "1,2\n3,oops\n");
  try {
    io::load_csv_matrix(tmp.path("bad.csv"));
    FAIL() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  write_file(tmp.path("ragged.csv"), "1,2\n3\n");
  EXPECT_THROW(io::load_csv_matrix(tmp.path("ragged.csv")), Error);
}

TEST(IoLibsvm, ParsesSparseRows) {
  TempDir tmp;
  write_file(tmp.path("d.svm"), "+1 1:0.5 3:2\n-1 2:1\n0 1:-1\n");
  io::LibsvmData data = io::load_libsvm(tmp.path("d.svm"));
  ASSERT_EQ(data.features.rows(), 3);
  ASSERT_EQ(data.features.cols(), 3);
  EXPECT_DOUBLE_EQ(data.features(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(data.features(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(data.features(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(data.labels[0], 1.0);
  EXPECT_DOUBLE_EQ(data.labels[1], -1.0);
  EXPECT_DOUBLE_EQ(data.labels[2], -1.0);  // non-positive labels map to -1
}

TEST(IoLibsvm, RejectsZeroBasedIndices) {
  TempDir tmp;
  write_file(tmp.path("bad.svm"), "+1 0:0.5\n");
  try {
    io::load_libsvm(tmp.path("bad.svm"));
    FAIL() << "expected parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":1:"), std::string::npos);
  }
}

TEST(IoSeries, SkipsCommentsAndBlanks) {
  TempDir tmp;
  write_file(tmp.path("s.dat"), "# header\n1.5\n\n2.5\n -3\n");
  Eigen::VectorXd s = io::load_series(tmp.path("s.dat"));
  ASSERT_EQ(s.size(), 3);
  EXPECT_DOUBLE_EQ(s[0], 1.5);
  EXPECT_DOUBLE_EQ(s[2], -3.0);
}

TEST(IoPgm, BinaryRoundTrip) {
  TempDir tmp;
  io::PgmImage img;
  img.height = 2;
  img.width = 3;
  img.pixels.resize(6);
  img.pixels << 0.0, 0.2, 0.4, 0.6, 0.8, 1.0;
  io::save_pgm(tmp.path("img.pgm"), img);
  io::PgmImage back = io::load_pgm(tmp.path("img.pgm"));
  ASSERT_EQ(back.height, 2);
  ASSERT_EQ(back.width, 3);
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(back.pixels[i], img.pixels[i], 1.0 / 255.0);
  }
}

TEST(IoPgm, ParsesAsciiWithComments) {
  TempDir tmp;
  write_file(tmp.path("a.pgm"), "P2\n# comment\n2 2\n255\n0 128\n255 64\n");
  io::PgmImage img = io::load_pgm(tmp.path("a.pgm"));
  ASSERT_EQ(img.width, 2);
  ASSERT_EQ(img.height, 2);
  EXPECT_NEAR(img.pixels[1], 128.0 / 255.0, 1e-12);
  EXPECT_NEAR(img.pixels[2], 1.0, 1e-12);
}

TEST(IoPgm, RejectsOtherFormats) {
  TempDir tmp;
  write_file(tmp.path("x.pgm"), "P6\n2 2\n255\n");
  EXPECT_THROW(io::load_pgm(tmp.path("x.pgm")), Error);
  EXPECT_THROW(io::load_pgm(tmp.path("missing.pgm")), Error);
}

}  // namespace
}  // namespace smp
