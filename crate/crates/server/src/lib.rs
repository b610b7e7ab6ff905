//! HTTP/JSON service hosting four-player games.
//!
//! Clients create a game, join it once per seat (each join returns a secret
//! token), then poll the state document and post moves for their seats. A
//! seat can also register a callback URL to be told when its turn comes up.
//!
//! | Method | Path | Body |
//! |---|---|---|
//! | POST | `/games` | `{"numPlayers": 4, "seed": n}` (both optional) |
//! | GET | `/games` | |
//! | POST | `/games/{id}/join` | |
//! | GET | `/games/{id}/state` | |
//! | POST | `/games/{id}/moves` | `{"token": t, "move": {...}}` |
//! | POST | `/games/{id}/callback` | `{"token": t, "url": u}` |
//! | GET | `/games/{id}/history` | finished games only |
//!
//! Errors come back as `{"error": code, "message": text}`.

pub mod api;
pub mod client;
pub mod store;
pub mod wire;

use std::net::SocketAddr;
use std::sync::Arc;
use std::thread::JoinHandle;

pub use api::{router, AppState};
pub use client::{Client, ClientError};
pub use store::{ApiError, GameStore, StoreConfig};
pub use wire::{state_doc, state_from_doc, GameStatus, MoveDoc, StateDoc};

/// Serves until the future resolves or the listener fails.
pub async fn serve(addr: SocketAddr, config: StoreConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    let app = router(AppState::new(Arc::new(GameStore::new(config))));
    axum::serve(listener, app).await
}

/// A server on its own runtime thread. Dropping it shuts the server down.
pub struct ServerHandle {
    pub addr: SocketAddr,
    shutdown: Option<tokio::sync::oneshot::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl ServerHandle {
    pub fn base_url(&self) -> String {
        format!("http://{}", self.addr)
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

/// Starts a server on `addr` (port 0 picks a free port) in a background
/// thread and returns once it accepts connections.
pub fn spawn_background(addr: SocketAddr, config: StoreConfig) -> std::io::Result<ServerHandle> {
    let listener = std::net::TcpListener::bind(addr)?;
    listener.set_nonblocking(true)?;
    let addr = listener.local_addr()?;
    let (tx, rx) = tokio::sync::oneshot::channel::<()>();
    let thread = std::thread::spawn(move || {
        let rt = tokio::runtime::Builder::new_multi_thread()
            .worker_threads(2)
            .enable_all()
            .build()
            .expect("tokio runtime");
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::from_std(listener).expect("listener");
            let app = router(AppState::new(Arc::new(GameStore::new(config))));
            let _ = axum::serve(listener, app)
                .with_graceful_shutdown(async {
                    let _ = rx.await;
                })
                .await;
        });
    });
    Ok(ServerHandle {
        addr,
        shutdown: Some(tx),
        thread: Some(thread),
    })
}
