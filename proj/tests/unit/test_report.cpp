#include <gtest/gtest.h>

#include <sstream>

#include "toral/parallel.hpp"
#include "toral/report.hpp"

using namespace toral;

TEST(Report, HeaderAndRows) {
  const std::string d2 = report_csv({2, 1, 30, 0});
  std::istringstream in(d2);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,r2,N1,A1,ext_count,ext_ratio,random_norm_sq");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 4), "1,4,");
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  // m <= 30 that are sums of two squares.
  EXPECT_EQ(rows, 15u);

  const std::string d3 = report_csv({3, 1, 10, 0});
  EXPECT_EQ(d3.substr(0, d3.find('\n')), "m,r3,band_eq,A1,A2,sub_count,sub_ratio");
}

TEST(Report, IndependentOfThreadCount) {
  set_thread_count(1);
  const std::string serial = report_csv({2, 1, 200, 3});
  set_thread_count(4);
  const std::string parallel = report_csv({2, 1, 200, 3});
  set_thread_count(0);
  EXPECT_EQ(serial, parallel);
}
