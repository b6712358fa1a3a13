#include <gtest/gtest.h>

#include "stoffar/step_history.hpp"

using namespace stoffar;

TEST(StepHistory, FreshHistoryHoldsOnes) {
  const StepHistory h(3, 2);
  EXPECT_DOUBLE_EQ(h.xi(), 3.0);
  EXPECT_DOUBLE_EQ(h.last(), 1.0);
}

TEST(StepHistory, PowerSums) {
  StepHistory one(1, 2);
  one.push(0.5);
  EXPECT_DOUBLE_EQ(one.xi(), 0.125);

  StepHistory two(2, 2);
  two.push(1.0);
  two.push(0.5);
  EXPECT_DOUBLE_EQ(two.xi(), 1.125);
  EXPECT_DOUBLE_EQ(two.power_sum(1.0), 1.5);
  EXPECT_EQ(two.norms(), (std::vector<double>{0.5, 1.0}));

  two.push(2.0);  // evicts the 1.0
  EXPECT_DOUBLE_EQ(two.xi(), 8.125);
  EXPECT_DOUBLE_EQ(two.last(), 2.0);
}

TEST(StepHistory, DegreeOneUsesSquares) {
  StepHistory h(2, 1);
  h.push(3.0);
  EXPECT_DOUBLE_EQ(h.xi(), 9.0 + 1.0);
}

TEST(StepHistory, RejectsBadInput) {
  EXPECT_THROW(StepHistory(0, 2), std::invalid_argument);
  StepHistory h(1, 2);
  EXPECT_THROW(h.push(-1.0), std::invalid_argument);
}

TEST(UpdateSigma, Examples) {
  EXPECT_DOUBLE_EQ(update_sigma(0.01, 1.0, 2), 0.02);
  EXPECT_DOUBLE_EQ(update_sigma(0.7, 0.0, 2), 0.7);
  EXPECT_DOUBLE_EQ(update_sigma(1.0, 0.5, 1), 1.25);
}

TEST(NegativeIndexSigma, Examples) {
  EXPECT_DOUBLE_EQ(negative_index_sigma(-1, 1.0, 3), 0.5);
  EXPECT_DOUBLE_EQ(negative_index_sigma(-3, 0.01, 3), 0.00125);
  EXPECT_DOUBLE_EQ(negative_index_sigma(-4, 1.0, 4), 1.0 / 16.0);
  EXPECT_THROW(negative_index_sigma(-5, 1.0, 4), std::out_of_range);
  EXPECT_THROW(negative_index_sigma(0, 1.0, 4), std::out_of_range);
}
