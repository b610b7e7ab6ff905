//! Blocking HTTP client for the game service.
//!
//! Must not be used from inside an async runtime.

use std::time::Duration;

use reqwest::blocking::{Client as Http, Response};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use crate::store::{GameSummary, HistoryDoc, JoinGrant};
use crate::wire::{MoveDoc, StateDoc};

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
    /// Non-success response with the server's error code.
    #[error("{status} {code}: {message}")]
    Api {
        status: u16,
        code: String,
        message: String,
    },
}

impl ClientError {
    pub fn code(&self) -> Option<&str> {
        match self {
            ClientError::Api { code, .. } => Some(code),
            ClientError::Transport(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: Http,
}

impl Client {
    pub fn new(base_url: &str) -> Result<Client, ClientError> {
        let http = Http::builder().timeout(Duration::from_secs(30)).build()?;
        Ok(Client {
            base: base_url.trim_end_matches('/').to_string(),
            http,
        })
    }

    fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    fn decode<T: DeserializeOwned>(resp: Response) -> Result<T, ClientError> {
        let status = resp.status();
        if status.is_success() {
            return Ok(resp.json()?);
        }
        let body: Value = resp.json().unwrap_or(Value::Null);
        Err(ClientError::Api {
            status: status.as_u16(),
            code: body["error"].as_str().unwrap_or("unknown").to_string(),
            message: body["message"].as_str().unwrap_or_default().to_string(),
        })
    }

    pub fn create_game(&self, seed: Option<u64>) -> Result<String, ClientError> {
        let mut body = json!({"numPlayers": 4});
        if let Some(s) = seed {
            body["seed"] = json!(s);
        }
        let v: Value = Self::decode(self.http.post(self.url("/games")).json(&body).send()?)?;
        Ok(v["gameId"].as_str().unwrap_or_default().to_string())
    }

    pub fn list_games(&self) -> Result<Vec<GameSummary>, ClientError> {
        Self::decode(self.http.get(self.url("/games")).send()?)
    }

    pub fn join(&self, game: &str) -> Result<JoinGrant, ClientError> {
        Self::decode(
            self.http
                .post(self.url(&format!("/games/{game}/join")))
                .send()?,
        )
    }

    pub fn state(&self, game: &str) -> Result<StateDoc, ClientError> {
        Self::decode(
            self.http
                .get(self.url(&format!("/games/{game}/state")))
                .send()?,
        )
    }

    pub fn post_move(
        &self,
        game: &str,
        token: &str,
        mv: &MoveDoc,
    ) -> Result<StateDoc, ClientError> {
        self.post_raw_move(game, &json!({"token": token, "move": mv}))
    }

    /// Posts an arbitrary body to the move endpoint.
    pub fn post_raw_move(&self, game: &str, body: &Value) -> Result<StateDoc, ClientError> {
        Self::decode(
            self.http
                .post(self.url(&format!("/games/{game}/moves")))
                .json(body)
                .send()?,
        )
    }

    pub fn register_callback(&self, game: &str, token: &str, url: &str) -> Result<(), ClientError> {
        let _: Value = Self::decode(
            self.http
                .post(self.url(&format!("/games/{game}/callback")))
                .json(&json!({"token": token, "url": url}))
                .send()?,
        )?;
        Ok(())
    }

    pub fn history(&self, game: &str) -> Result<HistoryDoc, ClientError> {
        Self::decode(
            self.http
                .get(self.url(&format!("/games/{game}/history")))
                .send()?,
        )
    }
}
