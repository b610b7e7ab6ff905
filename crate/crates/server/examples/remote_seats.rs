//! Starts a server on an ephemeral port and plays one game through it with
//! four HTTP clients choosing uniformly from `possibleMoves`.
//!
//! ```bash
//! cargo run -p kdom-server --example remote_seats
//! ```

use kdom_server::wire::MoveDoc;
use kdom_server::{spawn_background, Client, StoreConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let server = spawn_background("127.0.0.1:0".parse()?, StoreConfig::default())?;
    println!("server at {}", server.base_url());
    let client = Client::new(&server.base_url())?;
    let id = client.create_game(Some(2024))?;
    let seats: Vec<_> = (0..4).map(|_| client.join(&id)).collect::<Result<_, _>>()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut doc = client.state(&id)?;
    let mut posted = 0;
    while let Some(p) = doc.current_player {
        let mv: MoveDoc = *doc
            .possible_moves
            .choose(&mut rng)
            .expect("moves while running");
        doc = client.post_move(&id, &seats[p as usize].token, &mv)?;
        posted += 1;
    }
    println!("{posted} moves, status {:?}", doc.status);
    for s in &doc.scores {
        println!("  {s:?}");
    }
    let history = client.history(&id)?;
    println!(
        "history: seed {}, {} moves",
        history.seed,
        history.moves.len()
    );
    Ok(())
}
