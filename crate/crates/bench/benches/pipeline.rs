use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rwm_core::{
    build_plan, embed_image, encode_key, extract_image, forward_iwt, inverse_iwt, random_payload,
    BitImage, GrayImage, IntPlane,
};

fn cover(size: usize) -> GrayImage {
    GrayImage::from_fn(size, size, |r, c| ((r * 31 + c * 17 + (r * c) % 23) % 256) as u8).unwrap()
}

fn transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("iwt");
    for size in [64, 256, 512] {
        let plane = IntPlane::from(&cover(size));
        let coeffs = forward_iwt(&plane).unwrap();
        group.throughput(Throughput::Elements((size * size) as u64));
        group.bench_with_input(BenchmarkId::new("forward", size), &plane, |b, p| {
            b.iter(|| forward_iwt(p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("inverse", size), &coeffs, |b, c| {
            b.iter(|| inverse_iwt(c))
        });
    }
    group.finish();
}

fn embed_extract(c: &mut Criterion) {
    let img = cover(512);
    let mut group = c.benchmark_group("pipeline_512");
    group.sample_size(20);
    for bits in [26_214usize, 196_608, 393_216] {
        let logo = BitImage::from_bits(random_payload(bits, 1));
        let (marked, side) = embed_image(&img, &logo).unwrap();
        group.throughput(Throughput::Elements(bits as u64));
        group.bench_with_input(BenchmarkId::new("plan", bits), &bits, |b, &n| {
            b.iter(|| build_plan(512, 512, n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("embed", bits), &logo, |b, l| {
            b.iter(|| embed_image(&img, l).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("extract", bits), &side, |b, s| {
            b.iter(|| extract_image(&marked, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("encode_key", bits), &side, |b, s| {
            b.iter(|| encode_key(s))
        });
    }
    group.finish();
}

criterion_group!(benches, transform, embed_extract);
criterion_main!(benches);
