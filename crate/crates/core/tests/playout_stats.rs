use kdom::greedy::{choose_static, StaticStrategy};
use kdom::mce::{playout, PlayoutPolicy};
use kdom::{GameRng, GameState, PLAYERS};
use rand::SeedableRng;

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn self_play(seed: u64, strategy: StaticStrategy) -> [i32; PLAYERS] {
    let mut s = GameState::new(seed, 4).unwrap();
    let mut rng = GameRng::seed_from_u64(seed ^ 0xabcdef);
    while !s.is_terminal() {
        let m = choose_static(strategy, &s, &mut rng).unwrap();
        s.play(&m);
    }
    s.scores()
}

/// Random playouts from the opening are random self-play games, so both
/// estimates of the mean score must agree.
#[test]
fn random_playouts_match_random_self_play() {
    let n = 3000;
    let mut rng = GameRng::seed_from_u64(77);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let mut start = GameState::new(10_000 + i, 4).unwrap();
        start.determinize(&mut rng);
        a.extend(playout(&start, PlayoutPolicy::TrueRandom, 0, &mut rng).map(f64::from));
        b.extend(self_play(20_000 + i, StaticStrategy::TrueRandom).map(f64::from));
    }
    let (ma, sa) = mean_and_se(&a);
    let (mb, sb) = mean_and_se(&b);
    let z = (ma - mb).abs() / (sa * sa + sb * sb).sqrt();
    assert!(z < 4.0, "playout mean {ma:.2} vs self-play {mb:.2}");
}

#[test]
fn greedy_playouts_match_greedy_self_play() {
    let n = 150;
    let mut rng = GameRng::seed_from_u64(78);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let start = GameState::new(30_000 + i, 4).unwrap();
        a.extend(playout(&start, PlayoutPolicy::FullGreedy, 0, &mut rng).map(f64::from));
        b.extend(self_play(40_000 + i, StaticStrategy::FullGreedy).map(f64::from));
    }
    let (ma, sa) = mean_and_se(&a);
    let (mb, sb) = mean_and_se(&b);
    let z = (ma - mb).abs() / (sa * sa + sb * sb).sqrt();
    assert!(z < 4.0, "playout mean {ma:.2} vs self-play {mb:.2}");
}
