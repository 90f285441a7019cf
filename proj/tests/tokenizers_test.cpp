//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "biocorpus/error.hpp"
#include "biocorpus/rng.hpp"
#include "biocorpus/selfies.hpp"
#include "biocorpus/tokenizers.hpp"
#include "test_support.hpp"

using namespace biocorpus;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

Vocabulary small_vocab(const std::vector<std::string> &text) {
  return Vocabulary::build(text, selfies_alphabet(), 4);
}

const Vocabulary &corpus_vocab() {
  static const Vocabulary v =
      Vocabulary::build_from_file(testdata::data_path("text_vocab.txt"), selfies_alphabet(), 100);
  return v;
}

// Every way to cut s into pieces drawn from the set.
void all_segmentations(const std::string &s, const std::set<std::string> &pieces, std::vector<std::string> &prefix,
                       std::vector<std::vector<std::string>> &out) {
  if (s.empty()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t len = 1; len <= s.size(); ++len) {
    std::string head = s.substr(0, len);
    if (!pieces.count(head))
      continue;
    prefix.push_back(head);
    all_segmentations(s.substr(len), pieces, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TEST(SelfiesTokenizer, SplitsAtBrackets) {
  EXPECT_EQ(tokenize_selfies_string("[C][=C][Br]"), (std::vector<std::string>{ "[C]", "[=C]", "[Br]" }));
  EXPECT_TRUE(tokenize_selfies_string("").empty());
  EXPECT_EQ(tokenize_selfies_string("[C].[O]"), (std::vector<std::string>{ "[C]", ".", "[O]" }));
  EXPECT_EQ(code_of([] { tokenize_selfies_string("[C][C"); }), ErrorCode::kUnbalancedBracket);
  EXPECT_EQ(code_of([] { tokenize_selfies_string("[C[C]"); }), ErrorCode::kUnbalancedBracket);
  EXPECT_EQ(code_of([] { tokenize_selfies_string("[C]x[C]"); }), ErrorCode::kStrayCharacter);
}

TEST(FastaTokenizer, PrefixesResidues) {
  EXPECT_EQ(tokenize_fasta("MKR"), (std::vector<std::string>{ "<p>M", "<p>K", "<p>R" }));
  EXPECT_TRUE(tokenize_fasta("").empty());
  EXPECT_EQ(code_of([] { tokenize_fasta("MK1"); }), ErrorCode::kInvalidResidue);
  EXPECT_EQ(code_of([] { tokenize_fasta("mk"); }), ErrorCode::kInvalidResidue);
  EXPECT_EQ(code_of([] { tokenize_fasta("J"); }), ErrorCode::kInvalidResidue);
  EXPECT_EQ(tokenize_fasta("XBZUO").size(), 5U);
}

TEST(FastaTokenizer, ConcatenationIdentity) {
  Rng rng(11);
  const std::string residues = "ACDEFGHIKLMNPQRSTVWYXBZUO";
  for (int trial = 0; trial < 200; ++trial) {
    std::string seq;
    std::size_t len = rng.below(300);
    for (std::size_t i = 0; i < len; ++i)
      seq += residues[rng.below(residues.size())];
    std::string joined;
    for (const std::string &t : tokenize_fasta(seq))
      joined += t.substr(3);
    EXPECT_EQ(joined, seq);
  }
}

TEST(TextTokenizer, LongestMatchWins) {
  Vocabulary v = small_vocab({ "un", "related", "unrelated" });
  EXPECT_EQ(tokenize_text("unrelated", v), (std::vector<std::string>{ "unrelated" }));
}

TEST(TextTokenizer, UnknownPerCharacter) {
  Vocabulary v = small_vocab({ "un", "related" });
  EXPECT_EQ(tokenize_text("qq", v), (std::vector<std::string>{ "<unk>", "<unk>" }));
  // A two-byte code point is one unknown, not two.
  EXPECT_EQ(tokenize_text("\xC3\xA9", v), (std::vector<std::string>{ "<unk>" }));
}

TEST(TextTokenizer, GreedyAgreesWithExhaustiveSegmentation) {
  const std::set<std::string> pieces = { "mol", "ecule" };
  Vocabulary v = small_vocab({ pieces.begin(), pieces.end() });
  std::vector<std::string> prefix;
  std::vector<std::vector<std::string>> segs;
  all_segmentations("molecule", pieces, prefix, segs);
  ASSERT_EQ(segs.size(), 1U);
  EXPECT_EQ(segs[0], (std::vector<std::string>{ "mol", "ecule" }));
  EXPECT_EQ(tokenize_text("molecule", v), segs[0]);
}

TEST(TextTokenizer, SpacesBecomeWordBoundaries) {
  const Vocabulary &v = corpus_vocab();
  auto tokens = tokenize_text("the molecule is a drug", v);
  EXPECT_EQ(tokens, (std::vector<std::string>{ "the", "\xE2\x96\x81molecule", "\xE2\x96\x81is", "\xE2\x96\x81" "a",
                                               "\xE2\x96\x81" "drug" }));
  EXPECT_EQ(detokenize_text(tokens), "the molecule is a drug");
}

TEST(TextTokenizer, LosslessOnInVocabularyText) {
  const Vocabulary &v = corpus_vocab();
  Rng rng(5);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJ0123456789.,;()-";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    std::size_t len = rng.below(80);
    for (std::size_t i = 0; i < len; ++i)
      text += alphabet[rng.below(alphabet.size())];
    auto tokens = tokenize_text(text, v);
    for (const auto &t : tokens)
      ASSERT_NE(t, "<unk>") << text;
    EXPECT_EQ(detokenize_text(tokens), text);
  }
}

TEST(TextTokenizer, RequiresTextBlock) {
  Vocabulary v = small_vocab({});
  EXPECT_EQ(code_of([&] { tokenize_text("abc", v); }), ErrorCode::kMissingTextVocab);
}

TEST(Vocabulary, LayoutArithmetic) {
  std::vector<std::string> text;
  for (int i = 0; i < 100; ++i)
    text.push_back("w" + std::to_string(i));
  const int a = static_cast<int>(selfies_alphabet().size());
  Vocabulary v = Vocabulary::build(text, selfies_alphabet(), 100);
  const int specials = static_cast<int>(special_tokens().size());
  EXPECT_EQ(specials, 11);
  EXPECT_EQ(v.size(), 100 + a + 26 + specials + 100);
  EXPECT_EQ(v.count(Modality::kText), 100);
  EXPECT_EQ(v.count(Modality::kSelfies), a);
  EXPECT_EQ(v.count(Modality::kAminoAcid), 26);
  EXPECT_EQ(v.count(Modality::kSentinel), 100);
  // Block order and contiguity.
  for (int id = 1; id < v.size(); ++id)
    EXPECT_LE(v.modality(id - 1), v.modality(id));
  EXPECT_EQ(v.token(0), "w0");
  EXPECT_EQ(v.modality(100), Modality::kSelfies);
  EXPECT_EQ(v.token(100 + a), "<p>A");
  EXPECT_EQ(v.pad_id(), 100 + a + 26);
  EXPECT_EQ(v.sentinel_id(1), 100 + a + 26 + specials);
  EXPECT_EQ(v.token(v.size() - 1), "<M100>");
  EXPECT_EQ(v.sentinel_index(v.sentinel_id(37)), 37);
  EXPECT_EQ(v.sentinel_index(0), 0);
  EXPECT_EQ(code_of([&] { v.sentinel_id(101); }), ErrorCode::kTooManySpans);
}

TEST(Vocabulary, ModalitiesAreDisjoint) {
  const Vocabulary &v = corpus_vocab();
  std::set<std::string> seen;
  for (const VocabEntry &e : v.entries())
    EXPECT_TRUE(seen.insert(e.token).second) << e.token;
  auto c = v.find("C"), sc = v.find("[C]"), pc = v.find("<p>C");
  ASSERT_TRUE(c && sc && pc);
  EXPECT_EQ(v.modality(*c), Modality::kText);
  EXPECT_EQ(v.modality(*sc), Modality::kSelfies);
  EXPECT_EQ(v.modality(*pc), Modality::kAminoAcid);
  EXPECT_EQ(std::set<int>({ *c, *sc, *pc }).size(), 3U);
}

TEST(Vocabulary, DuplicatesAndMalformed) {
  EXPECT_EQ(code_of([] { small_vocab({ "[C]" }); }), ErrorCode::kDuplicateToken);
  EXPECT_EQ(code_of([] { small_vocab({ "<pad>" }); }), ErrorCode::kDuplicateToken);
  EXPECT_EQ(code_of([] { small_vocab({ "a", "a" }); }), ErrorCode::kDuplicateToken);
  EXPECT_EQ(code_of([] { small_vocab({ "a\tb" }); }), ErrorCode::kMalformedVocabFile);
  EXPECT_EQ(code_of([] { small_vocab({ "" }); }), ErrorCode::kMalformedVocabFile);
  EXPECT_EQ(code_of([] { Vocabulary::build({ "a" }, selfies_alphabet(), 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { Vocabulary::from_tsv("a\tnonsense\n"); }), ErrorCode::kMalformedVocabFile);
  EXPECT_EQ(code_of([] { Vocabulary::from_tsv("a\n"); }), ErrorCode::kMalformedVocabFile);
}

TEST(Vocabulary, TsvRoundTripIsByteIdentical) {
  const Vocabulary &v = corpus_vocab();
  Vocabulary again = Vocabulary::build_from_file(testdata::data_path("text_vocab.txt"), selfies_alphabet(), 100);
  EXPECT_EQ(v.to_tsv(), again.to_tsv());
  Vocabulary parsed = Vocabulary::from_tsv(v.to_tsv());
  EXPECT_EQ(parsed.to_tsv(), v.to_tsv());
  EXPECT_EQ(parsed.manifest_json(), v.manifest_json());
  // Dropping a sentinel from the middle breaks contiguity.
  std::string tsv = v.to_tsv();
  std::string m2 = "<M2>\tsentinel\n";
  tsv.erase(tsv.find(m2), m2.size());
  EXPECT_EQ(code_of([&] { Vocabulary::from_tsv(tsv); }), ErrorCode::kMalformedVocabFile);
}

TEST(Vocabulary, ManifestReportsCounts) {
  const Vocabulary &v = corpus_vocab();
  std::string m = v.manifest_json();
  EXPECT_NE(m.find("\"selfies_alphabet_size\": 210"), std::string::npos) << m;
  EXPECT_NE(m.find("\"sentinel\": 100"), std::string::npos);
  EXPECT_NE(m.find("\"sha256\""), std::string::npos);
}

TEST(Ids, EncodeDecode) {
  const Vocabulary &v = corpus_vocab();
  std::vector<std::string> tokens = { "[C]", "<p>M", "<bom>", "<M3>", "the" };
  EXPECT_EQ(decode_ids(encode_ids(tokens, v), v), tokens);
  EXPECT_EQ(encode_ids({ "[C]" }, v), (TokenSequence{ *v.find("[C]") }));
  EXPECT_EQ(code_of([&] { encode_ids({ "[Zz]" }, v); }), ErrorCode::kUnknownNonTextToken);
  EXPECT_EQ(code_of([&] { encode_ids({ "<p>1" }, v); }), ErrorCode::kUnknownNonTextToken);
  EXPECT_EQ(code_of([&] { encode_ids({ "<M9999>" }, v); }), ErrorCode::kUnknownNonTextToken);
  EXPECT_EQ(encode_ids({ "zzzunknown" }, v), (TokenSequence{ v.unk_id() }));
  EXPECT_EQ(code_of([&] { decode_ids({ v.size() }, v); }), ErrorCode::kUnknownId);
  EXPECT_EQ(code_of([&] { decode_ids({ -1 }, v); }), ErrorCode::kUnknownId);
}

TEST(Mixed, WrappedSentence) {
  const Vocabulary &v = corpus_vocab();
  auto tokens = tokenize_mixed("aspirin <bom>[C][C]<eom> binds <bom>MKR<eom>", v);
  std::vector<std::string> expected = { "aspirin", "\xE2\x96\x81", "<bom>", "[C]", "[C]", "<eom>",
                                        "\xE2\x96\x81" "binds", "\xE2\x96\x81", "<bom>", "<p>M", "<p>K", "<p>R",
                                        "<eom>" };
  EXPECT_EQ(tokens, expected);
  EXPECT_EQ(code_of([&] { tokenize_mixed("a <bom>[C]", v); }), ErrorCode::kUnbalancedBracket);
}

TEST(Corpus, EveryMoleculeTokenizes) {
  const Vocabulary &v = corpus_vocab();
  for (const std::string &smiles : testdata::read_lines(testdata::data_path("molecules.smi"))) {
    std::string selfies = smiles_to_selfies(smiles);
    auto tokens = tokenize_selfies_string(selfies);
    std::string joined;
    for (const auto &t : tokens)
      joined += t;
    EXPECT_EQ(joined, selfies);
    EXPECT_NO_THROW(encode_ids(tokens, v)) << smiles;
  }
}
