#include <doctest.h>

#include "frobrec/io.hpp"
#include "frobrec/verify.hpp"
#include "helpers.hpp"

using namespace frobrec;
using namespace frobrec::testing;

TEST_CASE("rational formatting and parsing") {
    CHECK(rat_str(rat_frac(-3, 96)) == "-1/32");
    CHECK(rat_str(rat_int(2)) == "2");
    CHECK(rat_parse("-1/96") == rat_frac(-1, 96));
    CHECK(rat_parse("7") == 7);
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("x/2"), std::invalid_argument);
}

TEST_CASE("json serialization of the rank-2 potential is pinned") {
    Orbifold A(1, 1, 1);
    auto rec = reconstruct(A, 4);
    CHECK(serialize(rec.potential, Format::Json) ==
          "{\"A\":[1,1,1],\"mu\":2,\"chi\":\"2\",\"max_m\":4,"
          "\"coefficients\":[{\"alpha\":{},\"m\":1,\"c\":\"1\"}]}\n");
}

TEST_CASE("json round-trip is byte exact") {
    for (auto [a1, a2, a3, mm] :
         std::vector<std::array<int, 4>>{{2, 2, 2, 4}, {2, 3, 5, 2}, {1, 2, 3, 2}}) {
        Orbifold A(a1, a2, a3);
        auto rec = reconstruct(A, mm);
        std::string bytes = serialize(rec.potential, Format::Json);
        Potential back = deserialize(bytes);
        CHECK(serialize(back, Format::Json) == bytes);
        CHECK(back.same_values(rec.potential));
        CHECK(back.requested_max_m() == mm);
        CHECK(back.complete());
    }
}

TEST_CASE("deserialized potentials read omitted zeros as known") {
    Orbifold A(2, 2, 2);
    auto rec = reconstruct(A, 4);
    Potential back = deserialize(serialize(rec.potential, Format::Json));
    // resolved-to-zero keys are omitted from the stream yet stay Known
    CHECK(*back.lookup({mk(A, {{1, 1, 1}, {2, 1, 1}}), 2}) == 0);
}

TEST_CASE("csv rows") {
    Orbifold A(3, 3, 3);
    auto rec = reconstruct(A, 1);
    std::string csv = serialize(rec.potential, Format::Csv);
    CHECK(csv.find("alpha,m,c\n") == 0);
    CHECK(csv.find("\"1,1:2;1,2:2\",0,\"-1/36\"\n") != std::string::npos);
    CHECK(csv.find("\"1,1:1;2,1:1;3,1:1\",1,\"1\"\n") != std::string::npos);
}

TEST_CASE("text format carries the header") {
    Orbifold A(2, 2, 2);
    auto rec = reconstruct(A, 4);
    std::string text = serialize(rec.potential, Format::Text);
    CHECK(text.find("A = (2,2,2)  mu = 5  chi = 1/2  max_m = 4") == 0);
    CHECK(text.find("c({1,1:4}, 0) = -1/96") != std::string::npos);
}

TEST_CASE("unverified stamp") {
    Orbifold A(1, 1, 1);
    auto rec = reconstruct(A, 1);
    CHECK(serialize(rec.potential, Format::Json, true).find("\"unverified\":true") !=
          std::string::npos);
    CHECK(serialize(rec.potential, Format::Json, false).find("unverified") == std::string::npos);
}

TEST_CASE("deserialize rejects malformed input") {
    CHECK_THROWS_WITH_AS(deserialize("{not json"), doctest::Contains("parse error"),
                         std::runtime_error);
    CHECK_THROWS_AS(deserialize("{\"A\":[2,2,2],\"mu\":9,\"chi\":\"1/2\",\"max_m\":1,"
                                "\"coefficients\":[]}"),
                    std::runtime_error);
    // inadmissible key
    CHECK_THROWS_AS(deserialize("{\"A\":[2,2,2],\"mu\":5,\"chi\":\"1/2\",\"max_m\":1,"
                                "\"coefficients\":[{\"alpha\":{\"1,1\":1},\"m\":0,\"c\":\"1\"}]}"),
                    std::runtime_error);
}

TEST_CASE("cache file names carry the run key") {
    Orbifold A(2, 3, 7);
    CHECK(cache_file_name(A, 3, std::nullopt) ==
          std::string("frobrec-2-3-7-m3-v") + kVersion + ".json");
    CHECK(cache_file_name(A, 3, 12) == std::string("frobrec-2-3-7-m3-len12-v") + kVersion + ".json");
}
