#include <gtest/gtest.h>

#include <lspectra/io.hpp>

#include <random>

using namespace lspectra;

TEST(Io, GradedRoundTrip) {
    for (auto& name : table_names()) {
        GradedGroup t = table(name, -9, 7);
        json j = graded_to_json(t, name);
        EXPECT_EQ(j["name"], name);
        GradedGroup back = graded_from_json(json::parse(j.dump()));
        EXPECT_EQ(back, t) << name;
    }
}

TEST(Io, GradedRejectsBadInput) {
    auto parse = [](const char* s) { return graded_from_json(json::parse(s)); };
    EXPECT_THROW(parse(R"({"window": [0, 1], "groups": {"0": "Z"}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [0, 1], "groups": {"0": "Z", "1": "0", "2": "0"}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [1, 0], "groups": {}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [0], "groups": {"0": "Z"}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"groups": {"0": "Z"}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [0, 0], "groups": {"0": "Q"}})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [0, 0], "groups": ["Z"]})"), InvalidInput);
    EXPECT_THROW(parse(R"({"window": [0, 1], "period": 1, "groups": {"0": "Z", "1": "0"}})"), InvalidInput);
    GradedGroup g = parse(R"({"window": [-1, 0], "period": null, "groups": {"0": "Z/2", "-1": "Z"}})");
    EXPECT_EQ(g.at(-1), FgAbGroup::Z(1));
}

TEST(Io, Tsv) {
    EXPECT_EQ(graded_to_tsv(table("Ls", -1, 1)), "-1\t0\n0\tZ\n1\tZ/2\n");
}

TEST(Io, ComplexAndStructureRoundTrip) {
    for (std::string n : {"E", "F", "hyperbolic", "unit"}) {
        StructuredComplex S = builtin_structure(n);
        StructuredComplex back = structure_from_json(json::parse(structure_to_json(S).dump()));
        EXPECT_EQ(back.C.ranks(), S.C.ranks());
        EXPECT_EQ(back.C.differentials(), S.C.differentials());
        EXPECT_EQ(back.dim, S.dim);
        for (int s = 0; s <= S.max_level(); ++s) EXPECT_EQ(back.level(s), S.level(s)) << n;
    }
    StructuredComplex P = tensor_structured(builtin_E(), builtin_F());
    StructuredComplex back = structure_from_json(structure_to_json(P));
    EXPECT_EQ(certify_ef(builtin_E(), builtin_F()), brown_kervaire(linking_form(back)));
}

TEST(Io, StructureRejectsBadInput) {
    json j = structure_to_json(builtin_F());
    j["levels"][0]["blocks"]["1"] = json::parse("[[1, 1]]");
    EXPECT_THROW(structure_from_json(j), InvalidInput);
    j = structure_to_json(builtin_E());
    j["levels"][1]["blocks"]["-1"] = json::parse("[[5]]");
    EXPECT_THROW(structure_from_json(j), Degenerate);
    j = structure_to_json(builtin_E());
    j["kind"] = "skew";
    EXPECT_THROW(structure_from_json(j), InvalidInput);
    EXPECT_THROW(complex_from_json(json::parse(R"({"ranks": {"a": 1}})")), InvalidInput);
    EXPECT_THROW(complex_from_json(json::parse(R"({"ranks": {"0": 1, "1": 1}, "differentials": {"1": [[1, 2]]}})")),
                 InvalidInput);
}

TEST(Io, BigIntegersSurvive) {
    Int big("123456789012345678901234567890");
    IntMatrix M{{1, 2}};
    M(0, 1) = big;
    json j = matrix_to_json(M);
    EXPECT_TRUE(j[0][1].is_string());
    EXPECT_EQ(matrix_from_json(j, 1, 2), M);
}

TEST(Io, LinkingFormRoundTrip) {
    LinkingForm L = linking_form(tensor_structured(builtin_E(), builtin_F()));
    json j = linking_to_json(L);
    EXPECT_EQ(j["values"], json::parse(R"(["0", "1/2", "1/2", "1/2"])"));
    EXPECT_EQ(linking_from_json(j), L);
    EXPECT_THROW(linking_from_json(json::parse(R"({"factors": [3], "values": ["0", "0", "0"]})")), InvalidInput);
    EXPECT_THROW(linking_from_json(json::parse(R"({"factors": [2], "values": ["0"]})")), InvalidInput);
}

TEST(Io, ReportRoundTrip) {
    Report r = verify_thmA(-12, 12, 0);
    json j = report_to_json(r);
    EXPECT_FALSE(j["pass"].get<bool>());
    Report back = report_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.items.size(), r.items.size());
    for (std::size_t i = 0; i < r.items.size(); ++i) {
        EXPECT_EQ(back.items[i].name, r.items[i].name);
        EXPECT_EQ(back.items[i].pass, r.items[i].pass);
        EXPECT_EQ(back.items[i].degree, r.items[i].degree);
        EXPECT_EQ(back.items[i].detail, r.items[i].detail);
    }
    EXPECT_EQ(report_to_json(back).dump(), j.dump());
}
