import { mount } from './app.js';

const root = document.getElementById('app');
if (root) {
  // same-origin service: the bundle is served from /ui by the gks service
  mount(root, '');
}
