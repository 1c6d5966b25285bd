import { ApiClient } from './api.js';
import { App } from './app.js';

// Same-origin by default (the service can serve this page); override with
// ?api=http://host:port&token=... for a separately hosted UI.
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? '';
const token = params.get('token') ?? undefined;

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

const app = new App(new ApiClient({ baseUrl, token }), root);
void app.start();
