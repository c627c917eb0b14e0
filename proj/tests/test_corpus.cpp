#include <doctest.h>

#include <cmath>

#include "sec/corpus.hpp"
#include "sec/errors.hpp"
#include "sec/spectrum.hpp"

using namespace sec;

TEST_CASE("white noise is deterministic in the seed and stays in [0,1)") {
    const Image a = white_noise(3, 16, 16, 42);
    const Image b = white_noise(3, 16, 16, 42);
    const Image c = white_noise(3, 16, 16, 43);
    CHECK(a.data == b.data);
    CHECK(a.data != c.data);
    for (double v : a.data) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    validate_image(a, "noise");
}

TEST_CASE("gaussian blur: identity at sigma 0, mean-preserving, variance-shrinking") {
    const Image img = white_noise(1, 32, 32, 7);
    CHECK(gaussian_blur(img, 0.0).data == img.data);
    CHECK_THROWS_AS(gaussian_blur(img, -1.0), DataError);

    const Image blurred = gaussian_blur(img, 2.0);
    validate_image(blurred, "blurred");
    auto moments = [](const Image& im) {
        double m = 0.0, m2 = 0.0;
        for (double v : im.data) { m += v; m2 += v * v; }
        m /= im.data.size();
        return std::pair{m, m2 / im.data.size() - m * m};
    };
    const auto [mean0, var0] = moments(img);
    const auto [mean1, var1] = moments(blurred);
    CHECK(mean1 == doctest::Approx(mean0).epsilon(1e-2));
    CHECK(var1 < 0.2 * var0);
}

TEST_CASE("blurring a noise image harder pushes SEC monotonically down") {
    const Image base = white_noise(1, 48, 48, 99);
    double prev = image_sec(base, SecVariant{});
    for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
        const double cur = image_sec(gaussian_blur(base, sigma), SecVariant{});
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("cosine grating validates its frequency bound") {
    CHECK_THROWS_AS(cosine_grating(1, 16, 16, 0, 0), DataError);
    CHECK_THROWS_AS(cosine_grating(1, 16, 16, 8, 0), DataError);
    const Image g = cosine_grating(1, 16, 16, 7, 0);
    validate_image(g, "grating");
}

TEST_CASE("blur ladder cycles sigmas, has unique ids, and is reproducible") {
    const auto ladder = blur_ladder(12, 3, 16, 16, 11);
    REQUIRE(ladder.size() == 12);
    const double want[] = {0.0, 1.0, 2.0, 4.0, 8.0};
    for (int i = 0; i < 12; ++i) {
        CHECK(ladder[i].blur_sigma == want[i % 5]);
        validate_image(ladder[i].image, ladder[i].id);
        for (int j = 0; j < i; ++j) CHECK(ladder[i].id != ladder[j].id);
    }
    const auto again = blur_ladder(12, 3, 16, 16, 11);
    for (int i = 0; i < 12; ++i) CHECK(again[i].image.data == ladder[i].image.data);
    const auto other = blur_ladder(12, 3, 16, 16, 12);
    CHECK(other[0].image.data != ladder[0].image.data);
}
