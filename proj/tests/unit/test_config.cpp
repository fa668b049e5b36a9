#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "prtrust/config.hpp"
#include "prtrust/errors.hpp"

using namespace prtrust;

TEST(Config, Defaults) {
  const AnalysisConfig c;
  EXPECT_DOUBLE_EQ(c.metrics.f_cap, 4.0);
  EXPECT_EQ(c.metrics.competence_window, 1000u);
  EXPECT_TRUE(c.metrics.exclude_bots);
  EXPECT_EQ(c.sample.per_repo_n, 25u);
  EXPECT_DOUBLE_EQ(c.sample.accept_ratio, 0.75);
  for (double w : c.weights.values) EXPECT_DOUBLE_EQ(w, 1.0 / 6);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesEveryKey) {
  const auto dir = std::filesystem::temp_directory_path() / "prtrust_cfg";
  std::filesystem::create_directories(dir);
  { std::ofstream(dir / "mine.lexicon") << "# custom\nvouch for\n"; }
  AnalysisConfig c;
  apply_config_text(c,
                    "# tuning\n"
                    "f_cap = 2.5\n"
                    "competence_window=50\n"
                    "  accept_ratio = 0.6  \n"
                    "per_repo_n = 40\n"
                    "seed = 18446744073709551615\n"
                    "exclude_bots = false\n"
                    "weights.transferred = 0.5\n"
                    "weights.action = 2\n"
                    "lexicon_path = mine.lexicon\n",
                    dir);
  EXPECT_DOUBLE_EQ(c.metrics.f_cap, 2.5);
  EXPECT_EQ(c.metrics.competence_window, 50u);
  EXPECT_DOUBLE_EQ(c.sample.accept_ratio, 0.6);
  EXPECT_EQ(c.sample.per_repo_n, 40u);
  EXPECT_EQ(c.sample.seed, 18446744073709551615ULL);
  EXPECT_FALSE(c.metrics.exclude_bots);
  EXPECT_DOUBLE_EQ(c.weights[Dimension::transferred], 0.5);
  EXPECT_DOUBLE_EQ(c.weights[Dimension::action], 2.0);
  EXPECT_EQ(c.metrics.lexicon.sources(), std::vector<std::string>{"vouch for"});
  std::filesystem::remove_all(dir);
}

TEST(Config, RejectsBadInput) {
  AnalysisConfig c;
  EXPECT_THROW(apply_config_text(c, "fcap = 3\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "f_cap 3\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "f_cap = abc\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "competence_window = -1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "weights.trust = 1\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "exclude_bots = maybe\n"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "lexicon_path = /nonexistent/x.lexicon\n"), Error);
  EXPECT_THROW(load_config("/nonexistent/prtrust.conf"), Error);
  AnalysisConfig neg;
  apply_config_text(neg, "f_cap = -1\n");
  EXPECT_THROW(neg.validate(), ConfigError);
}

TEST(Config, ShippedExampleLoads) {
  const auto path = std::filesystem::path(PRTRUST_CONFIG_DIR) / "prtrust.conf";
  if (!std::filesystem::exists(path)) GTEST_SKIP() << "no example config shipped";
  const AnalysisConfig c = load_config(path);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c, AnalysisConfig{}) << "the example config should spell out the defaults";
}
