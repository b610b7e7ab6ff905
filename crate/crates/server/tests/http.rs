use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use kdom::greedy::random_move;
use kdom::{GameRng, GameState, Move};
use kdom_server::store::JoinGrant;
use kdom_server::wire::{state_doc, GameStatus, MoveDoc};
use kdom_server::{spawn_background, state_from_doc, Client, ServerHandle, StoreConfig};
use rand::SeedableRng;
use serde_json::{json, Value};

fn local() -> SocketAddr {
    "127.0.0.1:0".parse().unwrap()
}

fn server() -> (ServerHandle, Client) {
    let h = spawn_background(local(), StoreConfig::default()).unwrap();
    let c = Client::new(&h.base_url()).unwrap();
    (h, c)
}

fn code<T: std::fmt::Debug>(r: Result<T, kdom_server::ClientError>) -> String {
    r.unwrap_err().code().unwrap().to_string()
}

fn seat_up(c: &Client, seed: u64) -> (String, Vec<JoinGrant>) {
    let id = c.create_game(Some(seed)).unwrap();
    let grants = (0..4).map(|_| c.join(&id).unwrap()).collect();
    (id, grants)
}

/// Plays random moves chosen from the rebuilt state until the game ends.
fn play_out(c: &Client, id: &str, grants: &[JoinGrant], rng: &mut GameRng) -> Value {
    loop {
        let doc = c.state(id).unwrap();
        let Some(p) = doc.current_player else {
            return serde_json::to_value(doc).unwrap();
        };
        let s = state_from_doc(&doc).unwrap();
        let mv = random_move(&s, rng);
        c.post_move(id, &grants[p as usize].token, &MoveDoc::from(&mv))
            .unwrap();
    }
}

#[test]
fn history_replays_to_the_final_state() {
    let (_h, c) = server();
    for seed in [3u64, 99, 1234] {
        let (id, grants) = seat_up(&c, seed);
        assert!(grants
            .iter()
            .enumerate()
            .all(|(i, g)| g.player_id as usize == i));
        let mut rng = GameRng::seed_from_u64(seed);
        let final_doc = play_out(&c, &id, &grants, &mut rng);
        assert_eq!(final_doc["status"], "finished");
        assert_eq!(final_doc["possibleMoves"], json!([]));
        let history = c.history(&id).unwrap();
        assert_eq!(history.seed, seed);
        assert_eq!(history.moves.len(), 52);
        let mut s = GameState::new(history.seed, 4).unwrap();
        for entry in &history.moves {
            assert_eq!(s.acting_player(), Some(entry.player as usize));
            s = s.apply_move(&Move::from(&entry.mv)).unwrap();
        }
        assert!(s.is_terminal());
        let replayed = serde_json::to_value(state_doc(&id, GameStatus::Finished, &s)).unwrap();
        assert_eq!(replayed, final_doc);
    }
}

#[test]
fn error_classes_over_http() {
    let (_h, c) = server();
    let (id, grants) = seat_up(&c, 5);
    let before = c.state(&id).unwrap();
    let mv = before.possible_moves[0];

    assert_eq!(code(c.post_move(&id, "deadbeef", &mv)), "bad_token");
    assert_eq!(
        code(c.post_move(&id, &grants[2].token, &mv)),
        "not_your_turn"
    );
    let taken: Vec<u8> = before
        .current_draft
        .as_ref()
        .unwrap()
        .iter()
        .map(|e| e.domino)
        .collect();
    let absent = (1..=48).find(|n| !taken.contains(n)).unwrap();
    let illegal = MoveDoc {
        placement: None,
        selection: Some(absent),
    };
    assert_eq!(
        code(c.post_move(&id, &grants[0].token, &illegal)),
        "illegal_move"
    );
    let token = grants[0].token.clone();
    for body in [
        json!({"token": token, "move": {"placement": "sideways", "selection": 1}}),
        json!({"token": token}),
        json!({"move": {"placement": null, "selection": taken[0]}}),
        json!([1, 2, 3]),
    ] {
        assert_eq!(
            code(c.post_raw_move(&id, &body)),
            "malformed_move",
            "{body}"
        );
    }
    assert_eq!(c.state(&id).unwrap(), before);

    let after = c.post_move(&id, &grants[0].token, &mv).unwrap();
    assert_eq!(after.current_player, Some(1));
    assert_eq!(code(c.join(&id)), "game_full");
    assert_eq!(code(c.state("missing")), "unknown_game");
    assert_eq!(
        code(c.register_callback(&id, &token, "not a url")),
        "malformed_url"
    );
    assert_eq!(
        code(c.register_callback(&id, "nope", "http://127.0.0.1:9/")),
        "bad_token"
    );
}

#[test]
fn waiting_games_are_listed_without_drafts() {
    let (_h, c) = server();
    let id = c.create_game(None).unwrap();
    let other = c.create_game(None).unwrap();
    assert_ne!(id, other);
    let doc = c.state(&id).unwrap();
    assert_eq!(doc.status, GameStatus::Waiting);
    assert!(doc.current_draft.is_none() && doc.previous_draft.is_none());
    assert!(doc.possible_moves.is_empty());
    let listed = c.list_games().unwrap();
    assert!(listed
        .iter()
        .any(|g| g.game_id == id && g.status == GameStatus::Waiting));
    // One client may hold several seats.
    let a = c.join(&id).unwrap();
    let b = c.join(&id).unwrap();
    assert_ne!(a.token, b.token);
    assert_eq!(c.state(&id).unwrap().status, GameStatus::Waiting);
}

/// Minimal receiver that records every notification body.
fn receiver() -> (
    SocketAddr,
    Arc<Mutex<Vec<Value>>>,
    std::thread::JoinHandle<()>,
) {
    use axum::routing::post;
    let seen = Arc::new(Mutex::new(Vec::new()));
    let listener = std::net::TcpListener::bind(local()).unwrap();
    listener.set_nonblocking(true).unwrap();
    let addr = listener.local_addr().unwrap();
    let sink = seen.clone();
    let t = std::thread::spawn(move || {
        let rt = tokio::runtime::Builder::new_current_thread()
            .enable_all()
            .build()
            .unwrap();
        rt.block_on(async move {
            let app = axum::Router::new().route(
                "/turn",
                post(move |axum::Json(v): axum::Json<Value>| {
                    let sink = sink.clone();
                    async move {
                        sink.lock().unwrap().push(v);
                        "ok"
                    }
                }),
            );
            let l = tokio::net::TcpListener::from_std(listener).unwrap();
            let _ = tokio::time::timeout(Duration::from_secs(60), axum::serve(l, app)).await;
        });
    });
    (addr, seen, t)
}

#[test]
fn callbacks_fire_once_per_own_turn() {
    let (_h, c) = server();
    let (addr, seen, _t) = receiver();
    let id = c.create_game(Some(8)).unwrap();
    let grants: Vec<JoinGrant> = (0..3).map(|_| c.join(&id).unwrap()).collect();
    c.register_callback(&id, &grants[0].token, &format!("http://{addr}/turn"))
        .unwrap();
    // Nothing listens on the discard port; the game must not care.
    c.register_callback(&id, &grants[1].token, "http://127.0.0.1:9/turn")
        .unwrap();
    let mut grants = grants;
    grants.push(c.join(&id).unwrap());
    let mut rng = GameRng::seed_from_u64(8);
    let end = play_out(&c, &id, &grants, &mut rng);
    assert_eq!(end["status"], "finished");
    let deadline = Instant::now() + Duration::from_secs(10);
    while seen.lock().unwrap().len() < 13 && Instant::now() < deadline {
        std::thread::sleep(Duration::from_millis(20));
    }
    std::thread::sleep(Duration::from_millis(200));
    let notes = seen.lock().unwrap().clone();
    assert_eq!(notes.len(), 13, "{notes:?}");
    assert!(notes
        .iter()
        .all(|n| n["player"] == 0 && n["gameId"] == id.as_str()));
    let mut rounds: Vec<u64> = notes.iter().map(|n| n["round"].as_u64().unwrap()).collect();
    rounds.sort_unstable();
    assert_eq!(rounds, (1..=13).collect::<Vec<_>>());
}

#[test]
fn symmetric_dominoes_accept_either_orientation() {
    let (_h, c) = server();
    for seed in 0..40u64 {
        let (id, grants) = seat_up(&c, seed);
        let mut rng = GameRng::seed_from_u64(seed);
        loop {
            let doc = c.state(&id).unwrap();
            let Some(p) = doc.current_player else { break };
            let s = state_from_doc(&doc).unwrap();
            let mut mv = random_move(&s, &mut rng);
            if let (Some(kdom::PlacementChoice::Place(pl)), Some(d)) =
                (mv.placement, s.domino_to_place())
            {
                if d.is_symmetric() {
                    mv.placement = Some(kdom::PlacementChoice::Place(kdom::Placement::new(
                        pl.b, pl.a,
                    )));
                    c.post_move(&id, &grants[p as usize].token, &MoveDoc::from(&mv))
                        .unwrap();
                    return;
                }
            }
            c.post_move(&id, &grants[p as usize].token, &MoveDoc::from(&mv))
                .unwrap();
        }
    }
    panic!("no symmetric domino came up");
}
