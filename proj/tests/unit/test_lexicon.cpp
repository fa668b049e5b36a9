#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "prtrust/errors.hpp"
#include "prtrust/lexicon.hpp"

using namespace prtrust;

TEST(Pattern, PlainSubstringIsCaseInsensitive) {
  const Pattern p("new member of our team");
  auto m = p.find("Syed is a New Member of our Team, yes");
  ASSERT_TRUE(m);
  EXPECT_EQ(m->begin, 10u);
  EXPECT_EQ(m->end, 32u);
  EXPECT_FALSE(p.find("a new member of the team"));
}

TEST(Pattern, WildcardSpansAnyRun) {
  const Pattern p("already reviewed * work");
  auto m = p.find("we already reviewed his work :)");
  ASSERT_TRUE(m);
  EXPECT_EQ(std::string("we already reviewed his work :)").substr(m->begin, m->end - m->begin),
            "already reviewed his work");
  EXPECT_FALSE(p.find("we reviewed his work already"));
}

TEST(Pattern, TrailingWildcardMatchesEmpty) {
  const Pattern p("recommend* this");
  EXPECT_TRUE(p.find("I recommend this"));
  EXPECT_TRUE(p.find("I'd recommend merging this"));
  EXPECT_FALSE(p.find("this I recommend"));
}

TEST(Pattern, NoLiteralIsRejected) {
  EXPECT_THROW(Pattern("*"), ConfigError);
  EXPECT_THROW(Pattern(""), ConfigError);
  EXPECT_THROW(VouchLexicon(std::vector<std::string>{}), ConfigError);
}

TEST(Lexicon, ParseSkipsCommentsAndBlanks) {
  const auto lex = VouchLexicon::parse("# header\n\n  i can vouch  \n#x\nworks with me\n");
  EXPECT_EQ(lex.sources(), (std::vector<std::string>{"i can vouch", "works with me"}));
  EXPECT_THROW(VouchLexicon::parse("# only comments\n\n"), ConfigError);
}

TEST(Lexicon, ShippedFileEqualsDefaults) {
  const auto shipped = VouchLexicon::load(std::string(PRTRUST_CONFIG_DIR) + "/vouch.lexicon");
  EXPECT_EQ(shipped, VouchLexicon::defaults());
  EXPECT_EQ(shipped.sources(), (std::vector<std::string>{"new member of our team", "already reviewed * work",
                                                         "i can vouch", "recommend* this", "works with me",
                                                         "on my team"}));
}

TEST(Lexicon, MatchAllAgreesWithRegexOracle) {
  const auto lex = VouchLexicon::defaults();
  const std::vector<std::string> texts = {
      "Syed is a new member of our team, we already reviewed his work :) Thanks for reaching out though",
      "I can vouch for her, she works with me on my team",
      "Would recommend merging this. Already reviewed all of their work and their work again.",
      "ALREADY REVIEWED WORK",
      "nothing to see",
      "recommend recommend this this",
      "on my teammate's branch",
  };
  for (const auto& t : texts) {
    const auto hits = lex.match_all(t);
    const auto spans = oracle::pattern_spans(t, lex.sources());
    ASSERT_EQ(hits.size(), spans.size()) << t;
    for (std::size_t i = 0; i < hits.size(); ++i) {
      EXPECT_EQ(t.substr(hits[i].span.begin, hits[i].span.end - hits[i].span.begin), spans[i]) << t;
    }
  }
}
